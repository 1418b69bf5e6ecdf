#ifndef SIGKIT_SIGNATURE_HPP
#define SIGKIT_SIGNATURE_HPP

#include <span>
#include <vector>

#include "sigkit/path.hpp"
#include "sigkit/tensor.hpp"

// Truncated signatures of piecewise-linear paths: the signature of a single
// line segment is the tensor exponential of its increment (level k is the
// k-fold increment power over k!), and concatenation multiplies signatures,
// so a sampled path is a left-to-right fold of segment exponentials.

namespace sigkit {

// exp of the level-1 tensor with coefficients delta; closed form, no series.
TruncatedTensor segment_signature(std::span<const double> delta, int d, int N);

// Chen fold over the segments; constant path gives the unit tensor,
// zero-increment segments are skipped.
TruncatedTensor path_signature(const Path& p, int N);

// Signature of the concatenation of two paths from their signatures.
TruncatedTensor chen_concat(const TruncatedTensor& s1, const TruncatedTensor& s2);

// Signatures of a batch of paths, optionally time-augmenting each first.
// Runs data-parallel; output order matches input order.
std::vector<TruncatedTensor> batch_signatures(const std::vector<Path>& paths, int N,
                                              bool augment_time);

} // namespace sigkit

#endif
