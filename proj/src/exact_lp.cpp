#include "msp/exact_lp.hpp"

#include <string>

namespace msp {

namespace {

void ensure(bool cond, const char* what)
{
    if (!cond)
        throw ContractViolation(std::string("exact_lp: ") + what);
}

/**
 * Dense two-phase tableau simplex on the standard form
 *
 *   max γ·x̃   s.t.  [A | slacks | artificials] x̃ = b >= 0,  x̃ >= 0,
 *
 * where each free structural variable x_j is split as u_j - w_j. The
 * artificial columns are kept through phase II (barred from entering), so the
 * current basis inverse is always readable beneath them; duals and Farkas
 * vectors come from it directly.
 */
class Simplex
{
    public:
        Simplex(const LinearProgram& lp)
            : n_(static_cast<int>(lp.objective.size())),
              me_(static_cast<int>(lp.eq_rows.size())),
              mi_(static_cast<int>(lp.ineq_rows.size())),
              m_(me_ + mi_),
              slack0_(2 * n_),
              art0_(2 * n_ + mi_),
              width_(art0_ + m_),
              tab_(MatrixXr::Zero(m_, width_)),
              rhs_(VectorXr::Zero(m_)),
              flipped_(m_, false),
              basis_(m_, -1)
        {
            for (int i = 0; i < m_; ++i) {
                const VectorXr& a = (i < me_) ? lp.eq_rows[i].first : lp.ineq_rows[i - me_].first;
                Rational b = (i < me_) ? lp.eq_rows[i].second : lp.ineq_rows[i - me_].second;
                for (int j = 0; j < n_; ++j) {
                    tab_(i, j) = a[j];
                    tab_(i, n_ + j) = -a[j];
                }
                if (i >= me_)
                    tab_(i, slack0_ + (i - me_)) = 1;
                if (b < 0) {
                    tab_.row(i) *= Rational(-1);
                    b = -b;
                    flipped_[i] = true;
                }
                tab_(i, art0_ + i) = 1;
                rhs_[i] = b;
                basis_[i] = art0_ + i;
            }
        }

        // Runs Bland's rule to optimality; returns the entering column when the
        // objective is unbounded instead.
        std::optional<int> run(const VectorXr& gamma, bool allow_artificials)
        {
            const int limit = allow_artificials ? width_ : art0_;
            for (;;) {
                const VectorXr reduced = reduced_costs(gamma);
                int enter = -1;
                for (int j = 0; j < limit; ++j) {
                    if (reduced[j] > 0) {
                        enter = j;
                        break;
                    }
                }
                if (enter < 0)
                    return std::nullopt;
                const int leave = ratio_test(enter);
                if (leave < 0)
                    return enter;
                pivot(leave, enter);
            }
        }

        Rational objective_value(const VectorXr& gamma) const
        {
            Rational v = 0;
            for (int i = 0; i < m_; ++i)
                if (gamma[basis_[i]] != 0)
                    v += gamma[basis_[i]] * rhs_[i];
            return v;
        }

        // Row multipliers y = γ_B B^{-1}, read beneath the artificial columns.
        VectorXr row_multipliers(const VectorXr& gamma) const
        {
            VectorXr y(m_);
            for (int i = 0; i < m_; ++i) {
                Rational yi = 0;
                for (int k = 0; k < m_; ++k)
                    if (gamma[basis_[k]] != 0)
                        yi += gamma[basis_[k]] * tab_(k, art0_ + i);
                y[i] = yi;
            }
            return y;
        }

        // Undo the row sign normalization: multipliers for the original rows.
        VectorXr unflip(const VectorXr& y) const
        {
            VectorXr out(m_);
            for (int i = 0; i < m_; ++i)
                out[i] = flipped_[i] ? Rational(-y[i]) : y[i];
            return out;
        }

        // Pivot basic artificials out after phase I (rows are degenerate then);
        // rows with no nonzero non-artificial entry are redundant and keep their
        // artificial basic at level zero, harmlessly.
        void retire_artificials()
        {
            for (int i = 0; i < m_; ++i) {
                if (basis_[i] < art0_)
                    continue;
                for (int j = 0; j < art0_; ++j) {
                    if (tab_(i, j) != 0) {
                        pivot(i, j);
                        break;
                    }
                }
            }
        }

        // Structural solution x_j = u_j - w_j of the current basic point.
        VectorXr structural_point() const
        {
            VectorXr full = VectorXr::Zero(width_);
            for (int i = 0; i < m_; ++i)
                full[basis_[i]] = rhs_[i];
            VectorXr x(n_);
            for (int j = 0; j < n_; ++j)
                x[j] = full[j] - full[n_ + j];
            return x;
        }

        // Structural ray for an entering column with no blocking row.
        VectorXr structural_ray(int enter) const
        {
            VectorXr delta = VectorXr::Zero(width_);
            delta[enter] = 1;
            for (int i = 0; i < m_; ++i)
                delta[basis_[i]] = -tab_(i, enter);
            VectorXr r(n_);
            for (int j = 0; j < n_; ++j)
                r[j] = delta[j] - delta[n_ + j];
            return r;
        }

        int rows() const { return m_; }
        int art_begin() const { return art0_; }

    private:
        VectorXr reduced_costs(const VectorXr& gamma) const
        {
            VectorXr r = gamma;
            for (int i = 0; i < m_; ++i) {
                const Rational gb = gamma[basis_[i]];
                if (gb != 0)
                    r -= gb * tab_.row(i).transpose();
            }
            return r;
        }

        int ratio_test(int enter) const
        {
            int best = -1;
            Rational best_ratio = 0;
            for (int i = 0; i < m_; ++i) {
                if (tab_(i, enter) > 0) {
                    const Rational ratio = rhs_[i] / tab_(i, enter);
                    if (best < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[best])) {
                        best = i;
                        best_ratio = ratio;
                    }
                }
            }
            return best;
        }

        void pivot(int row, int col)
        {
            const Rational piv = tab_(row, col);
            tab_.row(row) /= piv;
            rhs_[row] /= piv;
            for (int k = 0; k < m_; ++k) {
                if (k == row)
                    continue;
                const Rational f = tab_(k, col);
                if (f != 0) {
                    tab_.row(k) -= f * tab_.row(row);
                    rhs_[k] -= f * rhs_[row];
                }
            }
            basis_[row] = col;
        }

        int n_, me_, mi_, m_, slack0_, art0_, width_;
        MatrixXr tab_;
        VectorXr rhs_;
        std::vector<bool> flipped_;
        std::vector<int> basis_;
};

Rational row_dot(const VectorXr& a, const VectorXr& x)
{
    Rational s = 0;
    for (Eigen::Index j = 0; j < a.size(); ++j)
        s += a[j] * x[j];
    return s;
}

// Certificates are cheap at this scale; verify every one before returning.
void check_farkas(const LinearProgram& lp, const VectorXr& y)
{
    const int me = static_cast<int>(lp.eq_rows.size());
    const int mi = static_cast<int>(lp.ineq_rows.size());
    VectorXr combo = VectorXr::Zero(lp.dim());
    Rational rhs = 0;
    for (int i = 0; i < me; ++i) {
        combo += y[i] * lp.eq_rows[i].first;
        rhs += y[i] * lp.eq_rows[i].second;
    }
    for (int i = 0; i < mi; ++i) {
        ensure(y[me + i] >= 0, "Farkas multiplier negative on an inequality row");
        combo += y[me + i] * lp.ineq_rows[i].first;
        rhs += y[me + i] * lp.ineq_rows[i].second;
    }
    for (Eigen::Index j = 0; j < combo.size(); ++j)
        ensure(combo[j] == 0, "Farkas combination does not vanish");
    ensure(rhs < 0, "Farkas right-hand side not negative");
}

void check_primal(const LinearProgram& lp, const VectorXr& x)
{
    for (const auto& [a, b] : lp.eq_rows)
        ensure(row_dot(a, x) == b, "optimal point violates an equality row");
    for (const auto& [a, b] : lp.ineq_rows)
        ensure(row_dot(a, x) <= b, "optimal point violates an inequality row");
}

void check_dual(const LinearProgram& lp, const VectorXr& y, const Rational& value)
{
    const int me = static_cast<int>(lp.eq_rows.size());
    const int mi = static_cast<int>(lp.ineq_rows.size());
    const Rational sign = (lp.sense == Sense::Maximize) ? 1 : -1;
    VectorXr combo = VectorXr::Zero(lp.dim());
    Rational rhs = 0;
    for (int i = 0; i < me; ++i) {
        combo += y[i] * lp.eq_rows[i].first;
        rhs += y[i] * lp.eq_rows[i].second;
    }
    for (int i = 0; i < mi; ++i) {
        ensure(sign * y[me + i] >= 0, "dual multiplier has the wrong sign on an inequality row");
        combo += y[me + i] * lp.ineq_rows[i].first;
        rhs += y[me + i] * lp.ineq_rows[i].second;
    }
    for (Eigen::Index j = 0; j < combo.size(); ++j)
        ensure(combo[j] == lp.objective[j], "dual combination does not reproduce the objective");
    ensure(rhs == value, "dual objective differs from the primal optimum");
}

void check_ray(const LinearProgram& lp, const VectorXr& r)
{
    for (const auto& [a, b] : lp.eq_rows)
        ensure(row_dot(a, r) == 0, "unbounded ray violates an equality row");
    for (const auto& [a, b] : lp.ineq_rows)
        ensure(row_dot(a, r) <= 0, "unbounded ray violates an inequality row");
    const Rational gain = row_dot(lp.objective, r);
    ensure((lp.sense == Sense::Maximize) ? gain > 0 : gain < 0,
           "unbounded ray does not improve the objective");
}

} // namespace

LPResult solve_lp(const LinearProgram& lp)
{
    const Eigen::Index n = lp.objective.size();
    if (n < 1)
        throw InputError("solve_lp: objective dimension must be >= 1");
    for (const auto& [a, b] : lp.eq_rows)
        if (a.size() != n)
            throw InputError("solve_lp: equality row dimension mismatch");
    for (const auto& [a, b] : lp.ineq_rows)
        if (a.size() != n)
            throw InputError("solve_lp: inequality row dimension mismatch");

    Simplex simplex(lp);
    const int width = simplex.art_begin() + simplex.rows();

    // Phase I: drive the artificials to zero.
    VectorXr phase1 = VectorXr::Zero(width);
    for (int i = 0; i < simplex.rows(); ++i)
        phase1[simplex.art_begin() + i] = -1;

    const auto blocked1 = simplex.run(phase1, true);
    ensure(!blocked1.has_value(), "phase I cannot be unbounded");

    if (simplex.objective_value(phase1) < 0) {
        LPResult res;
        res.status = LPStatus::Infeasible;
        res.farkas = simplex.unflip(simplex.row_multipliers(phase1));
        check_farkas(lp, res.farkas);
        return res;
    }

    simplex.retire_artificials();

    // Phase II on the real objective (internally always maximizing).
    const Rational sign = (lp.sense == Sense::Maximize) ? 1 : -1;
    VectorXr phase2 = VectorXr::Zero(width);
    for (Eigen::Index j = 0; j < n; ++j) {
        phase2[j] = sign * lp.objective[j];
        phase2[n + j] = -sign * lp.objective[j];
    }

    const auto blocked2 = simplex.run(phase2, false);
    if (blocked2.has_value()) {
        LPResult res;
        res.status = LPStatus::Unbounded;
        res.ray = simplex.structural_ray(*blocked2);
        check_ray(lp, res.ray);
        return res;
    }

    LPResult res;
    res.status = LPStatus::Optimal;
    res.point = simplex.structural_point();
    res.value = row_dot(lp.objective, res.point);
    const VectorXr y = simplex.unflip(simplex.row_multipliers(phase2));
    res.dual = (lp.sense == Sense::Maximize) ? y : VectorXr(-y);
    check_primal(lp, res.point);
    check_dual(lp, res.dual, res.value);
    ensure(sign * res.value == simplex.objective_value(phase2),
           "tableau objective and recomputed objective differ");
    return res;
}

std::optional<VectorXr> strict_barycentric(const VectorXr& x, const std::vector<VectorXr>& points)
{
    if (points.empty())
        throw InputError("strict_barycentric: empty point list");
    const Eigen::Index d = x.size();
    for (const VectorXr& p : points)
        if (p.size() != d)
            throw InputError("strict_barycentric: point dimension mismatch");

    const int m = static_cast<int>(points.size());

    // Variables (q_1..q_m, t): maximize t subject to q_j >= t, Σ q = 1,
    // Σ q_j y_j = x. Bounded: m·t <= Σ q_j = 1.
    LinearProgram lp;
    lp.sense = Sense::Maximize;
    lp.objective = VectorXr::Zero(m + 1);
    lp.objective[m] = 1;

    VectorXr ones = VectorXr::Zero(m + 1);
    for (int j = 0; j < m; ++j)
        ones[j] = 1;
    lp.eq_rows.emplace_back(ones, Rational(1));
    for (Eigen::Index k = 0; k < d; ++k) {
        VectorXr row = VectorXr::Zero(m + 1);
        for (int j = 0; j < m; ++j)
            row[j] = points[j][k];
        lp.eq_rows.emplace_back(row, x[k]);
    }
    for (int j = 0; j < m; ++j) {
        VectorXr row = VectorXr::Zero(m + 1);
        row[j] = -1;
        row[m] = 1;
        lp.ineq_rows.emplace_back(row, Rational(0));
    }

    const LPResult res = solve_lp(lp);
    if (res.status == LPStatus::Infeasible)
        return std::nullopt;
    ensure(res.status == LPStatus::Optimal, "strict_barycentric LP cannot be unbounded");
    if (res.value <= 0)
        return std::nullopt;
    return VectorXr(res.point.head(m));
}

HullDecomposition represent_in_hull(const VectorXr& x,
                                    const std::vector<VectorXr>& vertices,
                                    const std::vector<VectorXr>& rays)
{
    const Eigen::Index d = x.size();
    for (const VectorXr& v : vertices)
        if (v.size() != d)
            throw InputError("represent_in_hull: vertex dimension mismatch");
    for (const VectorXr& r : rays)
        if (r.size() != d)
            throw InputError("represent_in_hull: ray dimension mismatch");
    if (vertices.empty())
        throw NotInHullError("represent_in_hull: no vertices, hull is empty", VectorXr());

    const int p = static_cast<int>(vertices.size());
    const int q = static_cast<int>(rays.size());

    LinearProgram lp;
    lp.sense = Sense::Maximize;
    lp.objective = VectorXr::Zero(p + q);

    VectorXr ones = VectorXr::Zero(p + q);
    for (int j = 0; j < p; ++j)
        ones[j] = 1;
    lp.eq_rows.emplace_back(ones, Rational(1));
    for (Eigen::Index k = 0; k < d; ++k) {
        VectorXr row(p + q);
        for (int j = 0; j < p; ++j)
            row[j] = vertices[j][k];
        for (int i = 0; i < q; ++i)
            row[p + i] = rays[i][k];
        lp.eq_rows.emplace_back(row, x[k]);
    }
    for (int j = 0; j < p + q; ++j) {
        VectorXr row = VectorXr::Zero(p + q);
        row[j] = -1;
        lp.ineq_rows.emplace_back(row, Rational(0));
    }

    const LPResult res = solve_lp(lp);
    if (res.status == LPStatus::Infeasible)
        throw NotInHullError("represent_in_hull: point " + to_string(x) + " is outside the hull",
                             res.farkas);
    ensure(res.status == LPStatus::Optimal, "represent_in_hull LP cannot be unbounded");

    HullDecomposition dec;
    dec.vertex_weights = res.point.head(p);
    dec.ray_weights = res.point.tail(q);
    return dec;
}

} // namespace msp
