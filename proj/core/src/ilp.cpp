#include "gstp/ilp.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gstp {

int IlpModel::add_var(std::string name, long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("IlpModel: empty domain for " + name);
    names_.push_back(std::move(name));
    los_.push_back(lo);
    uppers_.push_back(hi);
    return static_cast<int>(los_.size()) - 1;
}

void IlpModel::add_constraint(std::vector<LinTerm> terms, Rel rel, long rhs) {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= var_count())
            throw std::invalid_argument("IlpModel: constraint references undeclared variable");
    cons_.push_back({std::move(terms), rel, rhs});
}

bool IlpModel::satisfies(const std::vector<long>& a) const {
    if (static_cast<int>(a.size()) != var_count()) return false;
    for (int v = 0; v < var_count(); ++v)
        if (a[v] < los_[v] || a[v] > uppers_[v]) return false;
    for (const auto& c : cons_) {
        long lhs = 0;
        for (const auto& t : c.terms) lhs += t.coeff * a[t.var];
        switch (c.rel) {
            case Rel::Eq: if (lhs != c.rhs) return false; break;
            case Rel::Le: if (lhs > c.rhs) return false; break;
            case Rel::Ge: if (lhs < c.rhs) return false; break;
        }
    }
    return true;
}

namespace {

struct Domains {
    std::vector<long> lo, hi;
};

long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long ceil_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) == (b < 0))) ? q + 1 : q;
}

// One round of interval propagation for a single constraint; returns
// false on wipeout.
bool propagate_constraint(const LinConstraint& c, Domains& d) {
    long min_sum = 0, max_sum = 0;
    for (const auto& t : c.terms) {
        if (t.coeff >= 0) {
            min_sum += t.coeff * d.lo[t.var];
            max_sum += t.coeff * d.hi[t.var];
        } else {
            min_sum += t.coeff * d.hi[t.var];
            max_sum += t.coeff * d.lo[t.var];
        }
    }
    if (c.rel == Rel::Eq && (c.rhs < min_sum || c.rhs > max_sum)) return false;
    if (c.rel == Rel::Le && min_sum > c.rhs) return false;
    if (c.rel == Rel::Ge && max_sum < c.rhs) return false;

    for (const auto& t : c.terms) {
        if (t.coeff == 0) continue;
        long min_contrib = t.coeff > 0 ? t.coeff * d.lo[t.var] : t.coeff * d.hi[t.var];
        long max_contrib = t.coeff > 0 ? t.coeff * d.hi[t.var] : t.coeff * d.lo[t.var];
        if (c.rel != Rel::Ge) {
            // coeff * x <= rhs - (min_sum - min_contrib)
            long room = c.rhs - (min_sum - min_contrib);
            if (t.coeff > 0) d.hi[t.var] = std::min(d.hi[t.var], floor_div(room, t.coeff));
            else d.lo[t.var] = std::max(d.lo[t.var], ceil_div(room, t.coeff));
        }
        if (c.rel != Rel::Le) {
            // coeff * x >= rhs - (max_sum - max_contrib)
            long need = c.rhs - (max_sum - max_contrib);
            if (t.coeff > 0) d.lo[t.var] = std::max(d.lo[t.var], ceil_div(need, t.coeff));
            else d.hi[t.var] = std::min(d.hi[t.var], floor_div(need, t.coeff));
        }
        if (d.lo[t.var] > d.hi[t.var]) return false;
    }
    return true;
}

bool propagate(const IlpModel& m, Domains& d) {
    for (int rounds = 0; rounds < 64; ++rounds) {
        Domains before = d;
        for (const auto& c : m.constraints())
            if (!propagate_constraint(c, d)) return false;
        if (before.lo == d.lo && before.hi == d.hi) return true;
    }
    return true;  // propagation converged enough; search handles the rest
}

struct Solver {
    const IlpModel& model;

    bool search(Domains d, std::vector<long>& out) {
        if (!propagate(model, d)) return false;
        int pick = -1;
        long best_span = std::numeric_limits<long>::max();
        for (int v = 0; v < model.var_count(); ++v) {
            long span = d.hi[v] - d.lo[v];
            if (span == 0) continue;
            if (pick < 0 || span < best_span ||
                (span == best_span && model.var_name(v) < model.var_name(pick))) {
                best_span = span;
                pick = v;
            }
        }
        if (pick < 0) {
            out = d.lo;
            return model.satisfies(out);
        }
        for (long val = d.lo[pick]; val <= d.hi[pick]; ++val) {
            Domains child = d;
            child.lo[pick] = child.hi[pick] = val;
            if (search(std::move(child), out)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<long>> ilp_feasible(const IlpModel& model) {
    Domains d;
    for (int v = 0; v < model.var_count(); ++v) {
        d.lo.push_back(model.lower(v));
        d.hi.push_back(model.upper(v));
    }
    // constraints with no variables are decided immediately
    for (const auto& c : model.constraints()) {
        if (!c.terms.empty()) continue;
        bool ok = (c.rel == Rel::Eq && c.rhs == 0) || (c.rel == Rel::Le && c.rhs >= 0) ||
                  (c.rel == Rel::Ge && c.rhs <= 0);
        if (!ok) return std::nullopt;
    }
    Solver s{model};
    std::vector<long> out;
    if (!s.search(std::move(d), out)) return std::nullopt;
    if (!model.satisfies(out)) throw std::logic_error("ilp_feasible: assignment failed recheck");
    return out;
}

void dump_lp(std::ostream& out, const IlpModel& model) {
    out << "vars " << model.var_count() << "\n";
    for (int v = 0; v < model.var_count(); ++v)
        out << "var " << model.var_name(v) << " in [" << model.lower(v) << ", " << model.upper(v)
            << "]\n";
    out << "constraints " << model.constraints().size() << "\n";
    for (const auto& c : model.constraints()) {
        bool first = true;
        for (const auto& t : c.terms) {
            if (!first) out << " + ";
            first = false;
            out << t.coeff << "*" << model.var_name(t.var);
        }
        if (first) out << "0";
        out << (c.rel == Rel::Eq ? " = " : c.rel == Rel::Le ? " <= " : " >= ") << c.rhs << "\n";
    }
}

}  // namespace gstp
