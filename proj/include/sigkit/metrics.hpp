#ifndef SIGKIT_METRICS_HPP
#define SIGKIT_METRICS_HPP

#include <string>
#include <string_view>

#include "sigkit/path.hpp"
#include "sigkit/tensor.hpp"

// Semi-metrics on path space behind one dispatch type. The signature-induced
// distances compare truncated (optionally robustified) signatures in the
// tensor-algebra Hilbert norm; the rest are conventional baselines.

namespace sigkit {

struct RobustParams {
    double threshold = 4.0;  // C >= 1
    double decay = 1.0;      // a > 0
};

struct SemiMetricSpec {
    enum class Kind { SigTrunc, RSig, Sup, Lp, PVar, Dtw };

    Kind kind = Kind::SigTrunc;
    int level = 3;                     // N for sig/rsig
    RobustParams robust;               // rsig only
    double p = 2.0;                    // lp/pvar only
    bool augment_time = false;         // applied before sig/rsig distances

    // Grammar: sig:N | rsig:N:C:a | sup | lp:p | pvar:p | dtw.
    // (augment_time is a run option, not part of the string form.)
    static SemiMetricSpec parse(std::string_view text);
    std::string to_string() const;

    bool signature_based() const { return kind == Kind::SigTrunc || kind == Kind::RSig; }
};

// Psi_{a,C}(y) for y >= 1: y^2 below the threshold (y^2 <= C), otherwise
// C + C^{1+a}(C^{-a} - (y^2)^{-a})/a; continuous and increasing, with
// supremum C(1 + 1/a).
double psi(double y, const RobustParams& params);

// The unique lambda >= 0 with sum_k lambda^{2k} ||t^(k)||^2 = Psi(||t||),
// for t with scalar part 1. Returns 1 when all higher levels vanish or
// ||t||^2 <= threshold; otherwise bisection on [0,1] to 1e-12.
double normalize_lambda(const TruncatedTensor& t, const RobustParams& params);

// dilate(t, normalize_lambda(t)): the bounded, injective renormalization.
TruncatedTensor robust_normalize(const TruncatedTensor& t, const RobustParams& params);

TruncatedTensor robust_signature(const Path& x, int N, const RobustParams& params);

double trunc_sig_distance(const Path& x, const Path& y, int N);
double rsig_distance(const Path& x, const Path& y, int N, const RobustParams& params);

double sup_distance(const Path& x, const Path& y);
double lp_distance(const Path& x, const Path& y, double p);

// ||x||_{p-var}: O(L^2) dynamic program over vertex subsequences.
double p_variation(const Path& x, double p);
double p_var_distance(const Path& x, const Path& y, double p);

// Dependent DTW: full-window DP, local cost = Euclidean distance between
// multivariate samples, no normalization.
double dtw_distance(const Path& x, const Path& y);

// Uniform dispatch; signature variants honor spec.augment_time.
double distance(const SemiMetricSpec& spec, const Path& x, const Path& y);

} // namespace sigkit

#endif
