#include "majorreach/crange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorreach/random.hpp"

namespace majorreach {

namespace {

long factorial_capped(int n, long cap) {
    long f = 1;
    for (int j = 2; j <= n; ++j) {
        f *= j;
        if (f > cap) return cap + 1;
    }
    return f;
}

Complex pairing_sum(const Vector& a, const Vector& b, const std::vector<int>& sigma) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < sigma.size(); ++j) acc += a(static_cast<long>(j)) * b(sigma[j]);
    return acc;
}

Matrix permutation_matrix(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    Matrix p = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) p(sigma[j], j) = 1.0;
    return p;
}

std::vector<std::vector<int>> permutation_pool(int n, long max_permutations, std::uint64_t seed,
                                               bool* exhaustive) {
    std::vector<std::vector<int>> pool;
    const long nfact = factorial_capped(n, max_permutations);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    if (nfact <= max_permutations) {
        do {
            pool.push_back(sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        *exhaustive = true;
        return pool;
    }
    *exhaustive = false;
    pool.push_back(sigma);                                   // identity
    pool.emplace_back(sigma.rbegin(), sigma.rend());         // reversal
    Rng rng(seed);
    for (long s = 0; s < max_permutations; ++s) pool.push_back(random_permutation(n, rng));
    return pool;
}

// Sorted (descending) eigenvalue pairing is the extremum for Hermitian inputs;
// for general normal inputs these orderings are heuristic extras.
std::vector<int> sort_order(const Vector& v, bool descending) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const auto key = [&](int i) { return std::make_pair(v(i).real(), v(i).imag()); };
        return descending ? key(a) > key(b) : key(a) < key(b);
    });
    return idx;
}

RealVector hermitian_values_checked(const Matrix& m, const char* who) {
    if (!is_hermitian(m)) {
        throw NotHermitian(std::string(who) + ": input is not Hermitian within tolerance");
    }
    return hermitian_eig(m).values;
}

// Distance from z to the convex hull of a non-empty finite point set.
double distance_to_hull(Complex z, const PointSet2D& hull);

// Monotone chain; returns the hull vertices in counter-clockwise order
// (collinear sets collapse to their extreme segment).
PointSet2D convex_hull(PointSet2D pts) {
    auto less = [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Complex& a, const Complex& b) { return a == b; }),
              pts.end());
    const int n = static_cast<int>(pts.size());
    if (n <= 2) return pts;

    auto cross = [](const Complex& o, const Complex& a, const Complex& b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    PointSet2D hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

double distance_to_hull(Complex z, const PointSet2D& hull) {
    if (hull.empty()) throw EmptySet("distance_to_hull: empty hull");
    if (hull.size() == 1) return std::abs(z - hull[0]);
    if (hull.size() == 2) return point_segment_distance(z, hull[0], hull[1]);

    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i];
        const Complex b = hull[(i + 1) % hull.size()];
        const double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                             (b.imag() - a.imag()) * (z.real() - a.real());
        if (cross < 0.0) inside = false;  // hull is counter-clockwise
        best = std::min(best, point_segment_distance(z, a, b));
    }
    return inside ? 0.0 : best;
}

}  // namespace

CSpectrum c_spectrum(const Matrix& c, const Matrix& t, long max_permutations,
                     std::uint64_t seed) {
    if (!is_normal(c) || !is_normal(t)) {
        throw NotNormal("c_spectrum: both operators must be normal");
    }
    if (c.rows() != t.rows()) throw DimensionMismatch("c_spectrum: dimension mismatch");
    const Vector cv = normal_eig(c).values;
    const Vector tv = normal_eig(t).values;
    const int n = static_cast<int>(cv.size());

    CSpectrum out;
    std::vector<std::vector<int>> pool = permutation_pool(n, max_permutations, seed, &out.exhaustive);
    if (!out.exhaustive) {
        // Sorted and antisorted pairings realize the extrema for Hermitian inputs.
        const std::vector<int> co = sort_order(cv, true);
        const std::vector<int> td = sort_order(tv, true);
        const std::vector<int> ta = sort_order(tv, false);
        std::vector<int> sorted(n), anti(n);
        for (int j = 0; j < n; ++j) {
            sorted[co[j]] = td[j];
            anti[co[j]] = ta[j];
        }
        pool.push_back(sorted);
        pool.push_back(anti);
    }
    out.values.reserve(pool.size());
    for (const auto& sigma : pool) out.values.push_back(pairing_sum(cv, tv, sigma));
    return out;
}

CRangeSample sample_c_numerical_range(const Matrix& c, const Matrix& t, int samples,
                                      std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample_c_numerical_range: samples must be >= 1");
    if (c.rows() != t.rows() || c.rows() != c.cols() || t.rows() != t.cols()) {
        throw DimensionMismatch("sample_c_numerical_range: dimension mismatch");
    }
    const int n = static_cast<int>(c.rows());

    CRangeSample out;
    out.seed = seed;
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Matrix u = haar_unitary(n, rng);
        out.values.push_back((c * u.adjoint() * t * u).trace());
    }
    bool exhaustive = false;
    for (const auto& sigma : permutation_pool(n, 5040, seed + 1, &exhaustive)) {
        const Matrix p = permutation_matrix(sigma);
        out.values.push_back((c * p.adjoint() * t * p).trace());
    }
    out.sample_count = static_cast<int>(out.values.size());
    return out;
}

double k_c(const Matrix& c, const Matrix& t) {
    if (c.rows() != t.rows()) throw DimensionMismatch("k_c: dimension mismatch");
    const RealVector cv = hermitian_values_checked(c, "k_c");
    const RealVector tv = hermitian_values_checked(t, "k_c");
    const int n = static_cast<int>(cv.size());

    // Decreasing sequences of the positive and negative parts, zeros retained.
    auto part = [n](const RealVector& v, double sign) {
        RealVector p(n);
        for (int j = 0; j < n; ++j) p(j) = std::max(sign * v(j), 0.0);
        std::sort(p.data(), p.data() + n, std::greater<double>());
        return p;
    };
    const RealVector cp = part(cv, 1.0), cm = part(cv, -1.0);
    const RealVector tp = part(tv, 1.0), tm = part(tv, -1.0);
    return cp.dot(tp) + cm.dot(tm);
}

double k_c_bruteforce(const Matrix& c, const Matrix& t) {
    if (c.rows() != t.rows()) throw DimensionMismatch("k_c_bruteforce: dimension mismatch");
    const int n = static_cast<int>(c.rows());
    if (n > 8) throw TooLarge("k_c_bruteforce: n must be <= 8");
    const RealVector a = hermitian_values_checked(c, "k_c_bruteforce");
    const RealVector b = hermitian_values_checked(t, "k_c_bruteforce");

    // The modified eigenvalue sequences carry unlimited zero padding, so the
    // pairings to search are the partial matchings between the two spectra
    // (unmatched entries pair with zeros).
    double best = 0.0;
    std::vector<bool> used(n, false);
    auto recurse = [&](auto&& self, int i, double acc) -> void {
        if (i == n) {
            best = std::max(best, acc);
            return;
        }
        self(self, i + 1, acc);  // a(i) pairs with a padded zero
        for (int j = 0; j < n; ++j) {
            if (!used[j]) {
                used[j] = true;
                self(self, i + 1, acc + a(i) * b(j));
                used[j] = false;
            }
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

bool ando_majorization_test(const DensityMatrix& rho, const DensityMatrix& omega, double tol) {
    if (rho.dim() != omega.dim()) {
        throw DimensionMismatch("ando_majorization_test: dimension mismatch");
    }
    const int n = rho.dim();
    if (std::abs(rho.matrix().trace().real() - omega.matrix().trace().real()) > tol) return false;
    for (int k = 1; k <= n; ++k) {
        Matrix proj = Matrix::Zero(n, n);
        for (int j = 0; j < k; ++j) proj(j, j) = 1.0;
        if (k_c(rho.matrix(), proj) > k_c(omega.matrix(), proj) + tol) return false;
    }
    return true;
}

CollinearHullReport collinear_hull_check(const Matrix& c, const Matrix& t, int samples,
                                         double tol, std::uint64_t seed) {
    if (!is_normal(c)) throw NotNormal("collinear_hull_check: C must be normal");
    if (!is_normal(t)) throw NotNormal("collinear_hull_check: T must be normal");
    const Vector cv = normal_eig(c).values;
    const int n = static_cast<int>(cv.size());

    // Collinearity gate: residual of the best affine line fit, from the
    // principal axis of the centered eigenvalue cloud.
    const Complex mean = cv.sum() / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex d = cv(j) - mean;
        sxx += d.real() * d.real();
        syy += d.imag() * d.imag();
        sxy += d.real() * d.imag();
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const Complex axis = std::polar(1.0, theta);
    double residual = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex d = cv(j) - mean;
        residual = std::max(residual, std::abs(std::imag(d * std::conj(axis))));
    }
    const double c_trace_norm = trace_norm(c);
    if (residual > 1e-9 * std::max(1.0, c_trace_norm)) {
        throw NotCollinear("collinear_hull_check: eigenvalues of C are not collinear");
    }

    const CRangeSample w = sample_c_numerical_range(c, t, samples, seed);
    const CSpectrum p = c_spectrum(c, t, 5040, seed);
    const PointSet2D p_hull = convex_hull(p.values);
    const PointSet2D w_hull = convex_hull(w.values);

    CollinearHullReport report;
    report.samples = w.sample_count;
    report.bound = tol * c_trace_norm * operator_norm(t);
    for (const Complex& z : w.values) {
        report.max_distance = std::max(report.max_distance, distance_to_hull(z, p_hull));
    }
    report.inside = report.max_distance <= report.bound;

    double h = 0.0;
    for (const Complex& z : w_hull) h = std::max(h, distance_to_hull(z, p_hull));
    for (const Complex& z : p_hull) h = std::max(h, distance_to_hull(z, w_hull));
    report.hausdorff_conv = h;
    return report;
}

}  // namespace majorreach
