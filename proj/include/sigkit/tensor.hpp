#ifndef SIGKIT_TENSOR_HPP
#define SIGKIT_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

// Dense arithmetic in the truncated tensor algebra over R^d. An element is a
// list of levels 0..N, level k holding d^k coefficients; the word i_1...i_k
// (letters in 1..d) lives at flat index sum_j (i_j - 1) * d^(k-j), so a level
// is the row-major concatenation of its predecessor's blocks. All levels are
// stored back to back in one flat array, which keeps inner products and
// distances single sweeps.

namespace sigkit {

// number of coefficients in level k, i.e. d^k
std::size_t level_size(int d, int k);
// total number of coefficients in levels 0..N
std::size_t total_size(int d, int N);

class TruncatedTensor {
public:
    TruncatedTensor(int d, int N);  // zero tensor

    int dim() const { return d_; }
    int level() const { return N_; }

    std::span<double> level_span(int k);
    std::span<const double> level_span(int k) const;
    std::size_t level_offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }

    std::span<double> flat() { return coef_; }
    std::span<const double> flat() const { return coef_; }

    double scalar() const { return coef_[0]; }

    bool same_shape(const TruncatedTensor& other) const {
        return d_ == other.d_ && N_ == other.N_;
    }

private:
    int d_;
    int N_;
    std::vector<std::size_t> offsets_;  // offsets_[k] = start of level k, size N+2
    std::vector<double> coef_;
};

// 1 at level 0, zero elsewhere.
TruncatedTensor unit_tensor(int d, int N);

TruncatedTensor tensor_add(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor tensor_sub(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor tensor_scale(const TruncatedTensor& a, double c);

// Concatenation product: level n of the result is sum_{l=0..n} a^(l) (x) b^(n-l),
// levels above N discarded.
TruncatedTensor tensor_product(const TruncatedTensor& a, const TruncatedTensor& b);

// In-place a <- a (x) b. Same result as tensor_product, no allocation.
void tensor_product_inplace(TruncatedTensor& a, const TruncatedTensor& b);

double inner_product(const TruncatedTensor& a, const TruncatedTensor& b);
double norm(const TruncatedTensor& a);

// level k multiplied by lambda^k
TruncatedTensor dilate(const TruncatedTensor& a, double lambda);

// exp(v) = sum_n v^(x)n / n!, requires scalar part 0.
TruncatedTensor tensor_exp(const TruncatedTensor& v);
// log(g) = sum_{n>=1} (-1)^(n+1) (g-1)^(x)n / n, requires scalar part 1.
// (g-1) is nilpotent at truncation N, so the series is exact.
TruncatedTensor tensor_log(const TruncatedTensor& g);

// Copy of a truncated at a lower level M <= N. A signature truncated at M is
// exactly the first M+1 levels of the same signature at N.
TruncatedTensor truncate(const TruncatedTensor& a, int M);

} // namespace sigkit

#endif
