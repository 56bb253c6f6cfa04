#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gstp {

enum class Rel { Eq, Le, Ge };

struct LinTerm {
    int var = 0;
    long coeff = 0;
};

struct LinConstraint {
    std::vector<LinTerm> terms;
    Rel rel = Rel::Eq;
    long rhs = 0;
};

/// Integer program with named, finitely bounded variables and linear
/// equality/inequality constraints.
class IlpModel {
public:
    int add_var(std::string name, long lo, long hi);
    void add_constraint(std::vector<LinTerm> terms, Rel rel, long rhs);

    int var_count() const { return static_cast<int>(los_.size()); }
    const std::string& var_name(int v) const { return names_.at(v); }
    long lower(int v) const { return los_.at(v); }
    long upper(int v) const { return uppers_.at(v); }
    const std::vector<LinConstraint>& constraints() const { return cons_; }

    bool satisfies(const std::vector<long>& assignment) const;

private:
    std::vector<std::string> names_;
    std::vector<long> los_, uppers_;
    std::vector<LinConstraint> cons_;
};

/// Complete depth-first feasibility search with interval-arithmetic bound
/// propagation. Variable order is most-constrained-first (smallest live
/// domain), ties broken by name; values are tried ascending. A returned
/// assignment is re-checked against the raw constraint list.
std::optional<std::vector<long>> ilp_feasible(const IlpModel& model);

/// Plain-text listing: one variable or constraint per line.
void dump_lp(std::ostream& out, const IlpModel& model);

}  // namespace gstp
