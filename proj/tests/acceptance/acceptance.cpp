// One PASS/FAIL line per acceptance criterion.  Exit status is the number of
// failed criteria.

#include "helpers.hpp"
#include "tmoment/consistency.hpp"
#include "tmoment/extension.hpp"
#include "tmoment/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace tmoment;
using th::P;
using th::S;

namespace {

constexpr double coordinate_tol = 1e-9;
constexpr double printed_density_tol = 1e-6;
constexpr double seven_x_tol = 1e-4;
constexpr double seven_density_tol = 1e-5;
constexpr double tiny_density_bound = 1e-8;
constexpr double determinant_rel_tol = 1e-9;
constexpr double chain_rel_tol = 1e-8;
constexpr double circle_tol = 1e-8;
constexpr double round_trip_rel_tol = 1e-9;

struct Check {
    bool ok = true;
    std::ostringstream why, detail;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

double max_abs_diff(const Point& a, const Point& b)
{
    double d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::fabs(a[k].to_double() - b[k].to_double()));
    return d;
}

Polynomial cubic_h()
{
    return P({{{2, 2}, "1"}, {{2, 1}, "-1"}, {{2, 0}, "-14"}, {{1, 2}, "1/2"}, {{1, 1}, "43/2"},
              {{1, 0}, "6"}, {{0, 2}, "-17/2"}, {{0, 1}, "-11/2"}});
}

void four_atom(Check& c)
{
    const Multisequence beta = th::moments("circle_lines.moments.json");
    const MomentMatrix m = build_moment_matrix(beta);
    const KernelReport k = rank_kernel(m);
    c.require(k.rank == 4, "rank M(2) != 4");
    const std::vector<Polynomial> kernel{P({{{1, 1}, "1"}, {{0, 1}, "1/2"}}),
                                         P({{{0, 2}, "1"}, {{2, 0}, "1"}, {{1, 0}, "4"}, {{0, 0}, "-2"}})};
    c.require(k.kernel == kernel, "kernel differs");
    const VarietyReport v = compute_variety(k.kernel, 2);
    const std::vector<Point> want{{S("-2-sqrt(6)"), S("0")},
                                  {S("-1/2"), S("-1/2*sqrt(15)")},
                                  {S("-1/2"), S("1/2*sqrt(15)")},
                                  {S("-2+sqrt(6)"), S("0")}};
    c.require(v.kind == VarietyKind::Finite && v.card() == 4, "variety is not four points");
    if (v.card() == 4)
        for (std::size_t i = 0; i < 4; ++i) {
            c.require(max_abs_diff(v.points[i], want[i]) <= coordinate_tol, "variety coordinate off");
            c.require(v.points[i] == want[i], "variety coordinate not exact");
        }
    const EvalMatrix w = build_W(want, 2, 4);
    const Echelon e = row_echelon(w.values, 1e-10);
    c.require(e.rank() == 4, "rank W_4 != 4");
    const ConsistencyVerdict cv = consistency_check(beta, v);
    c.require(cv.checked.size() == 11, "kernel of W_4 is not 11-dimensional");
    const std::vector<Polynomial> f{
        P({{{0, 1}, "1/2"}, {{1, 1}, "1"}}),
        P({{{0, 0}, "-2"}, {{1, 0}, "4"}, {{2, 0}, "1"}, {{0, 2}, "1"}}),
        P({{{0, 0}, "-1"}, {{2, 0}, "9/2"}, {{3, 0}, "1"}}),
        P({{{0, 1}, "-1/4"}, {{2, 1}, "1"}}),
        P({{{0, 0}, "1"}, {{1, 0}, "-2"}, {{2, 0}, "-1/2"}, {{1, 2}, "1"}}),
        P({{{0, 1}, "-15/4"}, {{0, 3}, "1"}}),
        P({{{0, 0}, "9/2"}, {{1, 0}, "-1"}, {{2, 0}, "-81/4"}, {{4, 0}, "1"}}),
        P({{{0, 1}, "1/8"}, {{3, 1}, "1"}}),
        P({{{0, 0}, "-1/2"}, {{1, 0}, "1"}, {{2, 0}, "1/4"}, {{2, 2}, "1"}}),
        P({{{0, 1}, "15/8"}, {{1, 3}, "1"}}),
        P({{{0, 0}, "-15/2"}, {{1, 0}, "15"}, {{2, 0}, "15/4"}, {{0, 4}, "1"}}),
    };
    for (const auto& p : f) {
        c.require(riesz(beta, p).is_zero(), "Lambda(f_i) != 0");
        for (const auto& pt : want) c.require(evaluate(p, pt).is_zero(), "f_i does not vanish on V");
    }
    c.require(cv.status == ConsistencyStatus::Consistent, "not consistent");
    const SolveReport s = solve_extremal(beta);
    c.require(s.outcome == SolveOutcome::Measure && s.exact, "no exact measure");
    if (!s.measure) return;
    const AtomicMeasure& mu = *s.measure;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        const Point& w0 = mu.atoms[i];
        if (w0[0] == S("-1/2")) c.require(mu.densities[i] == S("1/5"), "rho_1, rho_2 != 1/5");
        if (w0 == want[0]) c.require(std::fabs(mu.densities[i].to_double() - 0.0142262) <= printed_density_tol, "rho_3");
        if (w0 == want[3]) c.require(std::fabs(mu.densities[i].to_double() - 0.585774) <= printed_density_tol, "rho_4");
    }
    c.detail << "rank 4, 4 exact points, 11 annihilated, rho = 1/5, 1/5, " << mu.densities[0].to_double() << ", "
          << mu.densities[3].to_double();
}

void seven_atom(Check& c)
{
    const Multisequence beta = th::moments("seven_atom.moments.json");
    const SolveReport s = solve_extremal(beta);
    c.require(s.rank == 7, "rank M(3) != 7");
    c.require(s.outcome == SolveOutcome::Measure, "no measure");
    if (!s.measure) return;
    const AtomicMeasure& mu = *s.measure;
    auto density_at = [&](double x) -> std::optional<double> {
        for (std::size_t i = 0; i < mu.atoms.size(); ++i)
            if (std::fabs(mu.atoms[i][0].to_double() - x) <= seven_x_tol) return mu.densities[i].to_double();
        return std::nullopt;
    };
    for (double x : {8.36748, 0.996357, 1.7299, 0.0}) c.require(density_at(x).has_value(), "x-value missing");
    if (!c.ok) return;
    c.require(std::fabs(*density_at(0.0) - 0.331731) <= seven_density_tol, "rho_1");
    const double r2 = *density_at(8.36748);
    c.require(std::fabs(r2 - 3.3378229e-10) <= seven_density_tol, "rho_2");
    c.require(std::fabs(r2) < tiny_density_bound && r2 > 0, "rho_2 sign or size");
    c.require(std::fabs(*density_at(0.996357) - 0.249980) <= seven_density_tol, "rho_3");
    c.require(std::fabs(*density_at(1.7299) - 0.08415439) <= seven_density_tol, "rho_4");
    c.detail << "rank 7, 7 atoms, rho_2 = " << r2;
}

bool compressed_positive(const Scalar& a8)
{
    SignedFunctional f = read_functional(load_json(th::fixture("cubic_functional_a8_8.functional.json")));
    f.weights.back() = a8;
    const MomentMatrix m = build_moment_matrix(beta_from_functional(f, 6));
    std::vector<std::size_t> sel;
    for (const auto& b : cubic_curve_basis()) {
        const MultiIndex e = b.terms().begin()->first;
        for (std::size_t k = 0; k < m.basis().size(); ++k)
            if (m.basis()[k] == e) sel.push_back(k);
    }
    const ScalarMatrix mb = m.entries().submatrix(sel, sel);
    for (std::size_t k = 1; k <= sel.size(); ++k)
        if (determinant(leading_block(mb, k)).sign() <= 0) return false;
    return true;
}

void threshold(Check& c)
{
    const Scalar alpha = S("6012817451/862617600"), eps = S("1/1000000");
    c.require(compressed_positive(alpha + eps), "not positive above the threshold");
    c.require(!compressed_positive(alpha - eps), "positive below the threshold");
    c.detail << "positive at alpha + 1e-6, not at alpha - 1e-6";
}

void certificates(Check& c)
{
    const AtomicMeasure mu = read_measure(load_json(th::fixture("cubic_curve.measure.json")));
    const VandermondeReport vb = vandermonde_VB(cubic_curve_basis(), mu.atoms);
    const double want = 98415.0 / 4.0 * std::sqrt(13.0);
    c.require(std::fabs(vb.determinant.to_double() - want) <= determinant_rel_tol * want, "det V_B");
    c.require(vb.determinant == S("98415/4*sqrt(13)"), "det V_B not exact");
    const Polynomial h = compute_h(mu.atoms);
    c.require(h == cubic_h(), "h differs");
    std::vector<Point> rounded;
    for (const auto& w : mu.atoms)
        rounded.push_back(w[0].is_rational() ? w : Point{w[0].as_float(), w[1].as_float()});
    const Polynomial hf = compute_h(rounded), printed = cubic_h();
    for (const auto& [e, coef] : printed.terms())
        c.require(std::fabs(hf.coefficient(e).to_double() - coef.to_double()) <= 1e-9, "float h coefficient");
    const Multisequence bad = th::moments("cubic_functional_a8_8.moments.json");
    c.require(riesz(bad, cubic_h()) == S("-405/128"), "Lambda(h)");
    const ReducedTestVerdict no = reduced_consistency_test(bad);
    c.require(no.status == ReducedStatus::NoMeasure, "reduced test on the functional");
    const ReducedTestVerdict yes = reduced_consistency_test(th::moments("cubic_curve.moments.json"));
    c.require(yes.status == ReducedStatus::MeasureExists, "reduced test on the measure");
    c.detail << "det = " << vb.determinant.to_string() << ", Lambda(h) = " << riesz(bad, cubic_h()).to_string();
}

void chain(Check& c)
{
    const Multisequence beta = th::moments("nine_atom.moments.json");
    const MomentMatrix m3 = build_moment_matrix(beta);
    const KernelReport k3 = rank_kernel(m3);
    c.require(k3.rank == 8, "rank M(3) != 8");
    const VarietyReport v = compute_variety(k3.kernel, 2);
    c.require(v.card() == 9, "card V != 9");
    const ExtensionReport e4 = propagate_recursive_extension(m3, k3);
    c.require(e4.extended && e4.well_defined && e4.undetermined.empty(), "M(4) not determined");
    c.require(e4.rank_n1 && *e4.rank_n1 == 9 && !e4.flat, "M(4) rank or flatness");
    const SearchReport s = extension_search(beta, 4);
    c.require(s.status == SearchStatus::Flat && s.steps.size() == 2, "M(5) not flat");
    c.require(s.solve && s.solve->measure && s.solve->measure->atoms.size() == 9, "no 9-atom measure");
    c.require(s.residual && (s.residual->exact ? s.residual->max_residual == 0.0
                                               : s.residual->max_relative <= chain_rel_tol),
              "measure residual");
    if (s.residual) c.detail << "rank 8 -> 9 -> 9, 9 atoms, relative residual " << s.residual->max_relative;
}

void complex_family(Check& c)
{
    for (int n : {2, 3}) {
        const Multisequence beta = complex_to_real(circle_family_gamma(n, S("1/2")));
        const MomentMatrix m = build_moment_matrix(beta);
        const KernelReport k = rank_kernel(m);
        c.require(k.rank == static_cast<std::size_t>(2 * n), "rank != 2n");
        c.require(psd_check(m).psd, "not psd");
        c.require(recursiveness_check(m, k).recursive, "not recursive");
        const VarietyReport v = compute_variety(k.kernel, 2);
        c.require(v.kind == VarietyKind::Finite && v.card() == static_cast<std::size_t>(2 * n), "card V != 2n");
        for (const auto& w : v.points) {
            const double x = w[0].to_double(), y = w[1].to_double();
            c.require(std::fabs(x * x + y * y - 1) <= circle_tol, "point off the unit circle");
        }
    }
    c.detail << "n = 2, 3: rank 2n, psd, recursive, 2n points on the unit circle";
}

void properties(Check& c)
{
    std::mt19937 rng(20240611);
    auto rational = [&](int lim, int den) {
        std::uniform_int_distribution<int> a(-lim * den, lim * den), b(1, den);
        return Scalar(mpq_class(a(rng), b(rng)));
    };
    int recovered = 0, computed = 0, basis_checked = 0, propagated = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t atoms = 1 + static_cast<std::size_t>(t % 6);
        const int n = atoms <= 1 ? 1 : atoms <= 4 ? 2 : 3;
        AtomicMeasure mu;
        while (mu.atoms.size() < atoms) {
            Point w{rational(4, 2), rational(4, 2)};
            if (std::find(mu.atoms.begin(), mu.atoms.end(), w) == mu.atoms.end()) mu.atoms.push_back(w);
        }
        std::uniform_int_distribution<int> num(1, 9), den(1, 4);
        for (std::size_t k = 0; k < atoms; ++k) mu.densities.emplace_back(mpq_class(num(rng), den(rng)));
        const Multisequence beta = beta_from_atoms(mu.atoms, mu.densities, 2, 2 * n);

        auto matches = [&](const AtomicMeasure& got) {
            if (got.atoms.size() != atoms) return false;
            for (std::size_t k = 0; k < atoms; ++k) {
                bool hit = false;
                for (std::size_t j = 0; j < atoms; ++j)
                    if (max_abs_diff(got.atoms[j], mu.atoms[k]) <= 1e-8 &&
                        std::fabs(got.densities[j].to_double() - mu.densities[k].to_double()) <=
                            round_trip_rel_tol * mu.densities[k].to_double())
                        hit = true;
                if (!hit) return false;
            }
            return true;
        };
        const SolveReport s = solve_extremal(beta, {}, mu.atoms);
        if (s.outcome == SolveOutcome::Measure && matches(*s.measure)) ++recovered;
        const SolveReport sc = solve_extremal(beta);
        if (sc.variety && sc.variety->card() == atoms) {
            c.require(sc.outcome == SolveOutcome::Measure && matches(*sc.measure), "computed-variety round trip");
            ++computed;
        }

        const MomentMatrix m = build_moment_matrix(beta);
        const KernelReport k = rank_kernel(m);
        const ConsistencyVerdict cv = consistency_check(beta, validate_points(k.kernel, 2, mu.atoms));
        c.require(cv.status == ConsistencyStatus::Consistent, "synthesized data inconsistent");
        if (cv.status == ConsistencyStatus::Consistent)
            c.require(recursiveness_check(m, k).recursive, "consistent but not recursive");

        if (s.measure) {
            std::vector<Polynomial> basis;
            std::uniform_int_distribution<int> coef(-3, 3);
            for (const auto& b : s.basis) {
                Polynomial p(2);
                p.add_term(b, Scalar(1));
                for (const auto& e : monomial_basis(2, n)) p.add_term(e, Scalar(coef(rng)));
                basis.push_back(p);
            }
            if (auto rho = solve_densities(beta, basis, s.measure->atoms)) {
                c.require(*rho == s.measure->densities, "densities depend on the basis");
                ++basis_checked;
            }
        }

        const ExtensionReport e = propagate_recursive_extension(m, k);
        c.require(e.hankel_ok, "propagated extension violates the Hankel property");
        if (e.extended) ++propagated;
    }
    c.require(recovered == 200, "supplied-variety round trip");
    c.require(computed >= 180, "too few generic instances");
    c.require(basis_checked >= 150, "too few basis comparisons");
    c.detail << recovered << "/200 recovered, " << computed << " via computed variety, " << basis_checked
          << " basis comparisons, " << propagated << " full propagations";
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"four-atom circle and lines end to end", four_atom},
        {"seven-atom float instance", seven_atom},
        {"positivity threshold of the cubic functional", threshold},
        {"cubic-curve certificates", certificates},
        {"nine-atom extension chain", chain},
        {"complex circle family", complex_family},
        {"property suites", properties},
    };
    int failed = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.why.str(std::string("exception: ") + e.what());
        }
        ++index;
        std::cout << (c.ok ? "PASS" : "FAIL") << " " << index << " " << name << ": " << (c.ok ? c.detail : c.why).str() << "\n";
        if (!c.ok) ++failed;
    }
    return failed;
}
