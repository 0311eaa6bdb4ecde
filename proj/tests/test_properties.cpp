#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jorn/deformation.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <type_traits>

using namespace jorn;

namespace {

std::string data_path(const std::string& f) { return std::string(JORN_DEFAULT_DATA_DIR) + "/" + f; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Catalog& cat() {
    static Catalog c = Catalog::load(data_path("catalog.json"));
    return c;
}

// unimodular integer matrices keep the rational fast path exact and small
Matrix<Rational> random_invertible(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> d(-2, 2), ix(0, n - 1);
    auto m = Matrix<Rational>::identity(static_cast<std::size_t>(n));
    for (int s = 0; s < 3 * n; ++s) {
        int i = ix(rng), j = ix(rng);
        if (i == j) continue;
        Rational c(d(rng));
        for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    for (int s = 0; s < n; ++s) {
        int i = ix(rng), j = ix(rng);
        for (int k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
    }
    return m;
}

Matrix<ExactScalar> lift(const Matrix<Rational>& m) {
    Matrix<ExactScalar> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ExactScalar(m(i, j));
    return out;
}

template <class F>
std::vector<int> cheap_invariants(const Tensor<F>& t) {
    std::vector<int> v{ann_dim(t), center_dim(t), jacobi_dim(t), der_dim(t), is_associative(t) ? 1 : 0};
    for (int d : power_dims(t)) v.push_back(d);
    return v;
}

template <class F>
Tensor<F> moved(const Tensor<F>& t, const Matrix<Rational>& g) {
    if constexpr (std::is_same_v<F, Rational>)
        return apply_basis_change(t, g);
    else
        return apply_basis_change(t, lift(g));
}

template <class F>
void check_invariance(const Tensor<F>& t, std::mt19937& rng, int& checked) {
    auto base = cheap_invariants(t);
    for (int it = 0; it < 100; ++it) {
        auto m = moved(t, random_invertible(rng, t.dim()));
        CHECK(is_jordan(m));
        CHECK(cheap_invariants(m) == base);
        ++checked;
    }
    CHECK(compute_profile(moved(t, random_invertible(rng, t.dim()))) == compute_profile(t));
}

}  // namespace

TEST_CASE("invariants are unchanged by random basis changes") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (const auto& e : cat().entries())
        for (const auto& id : cat().sampled_ids(e)) {
            auto t = cat().instantiate(id);
            INFO(id.str());
            if (is_rational(t))
                check_invariance(to_rational(t), rng, checked);
            else
                check_invariance(t, rng, checked);
        }
    CHECK(checked >= 8500);
}

TEST_CASE("b2 plus der equals n squared") {
    for (const auto& e : cat().entries())
        for (const auto& id : cat().sampled_ids(e)) {
            auto p = invariant_profile(cat().instantiate(id));
            INFO(id.str());
            CHECK(p.b2_dim == p.dim * p.dim - p.der_dim);
            CHECK(p.orbit_dim == p.b2_dim);
        }
}

TEST_CASE("group action law") {
    std::mt19937 rng(7);
    for (const char* l : {"J_21", "J_34", "eps_1", "J_40"}) {
        auto t = cat().instantiate(l);
        for (int it = 0; it < 20; ++it) {
            auto g = lift(random_invertible(rng, 5)), h = lift(random_invertible(rng, 5));
            CHECK(apply_basis_change(apply_basis_change(t, g), h) == apply_basis_change(t, compose(g, h)));
        }
    }
}

TEST_CASE("data files round trip byte identically") {
    std::string c = slurp(data_path("catalog.json"));
    CHECK(Catalog::from_json_text(c).to_json_text() == c);
    std::string k = slurp(data_path("curves.json"));
    CHECK(CurveFile::from_json_text(k).to_json_text() == k);
}
