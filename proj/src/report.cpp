#include "paracyc/report.hpp"

#include <sstream>

namespace paracyc {

bool ValidationReport::all_ok() const {
    for (const auto& c : checks_)
        if (!c.ok) return false;
    return true;
}

std::vector<CheckResult> ValidationReport::failures() const {
    std::vector<CheckResult> out;
    for (const auto& c : checks_)
        if (!c.ok) out.push_back(c);
    return out;
}

void ValidationReport::note_pass(const std::string& identity, int lo, int hi) {
    CheckResult r;
    r.identity = identity;
    r.ok = true;
    r.witness = "degrees " + std::to_string(lo) + ".." + std::to_string(hi);
    checks_.push_back(std::move(r));
}

void ValidationReport::note_fail(const std::string& identity, int degree,
                                 const std::string& witness) {
    CheckResult r;
    r.identity = identity;
    r.degree = degree;
    r.witness = witness;
    checks_.push_back(std::move(r));
}

void ValidationReport::check_equal(const std::string& identity, const GradedMap& a,
                                   const GradedMap& b) {
    MapComparison c = compare(a, b);
    if (c.equal)
        note_pass(identity, c.lo, c.hi);
    else
        note_fail(identity, c.fail_degree,
                  c.note.empty() ? "blocks differ" : c.note);
}

void ValidationReport::check_zero(const std::string& identity, const GradedMap& a) {
    if (a.window_empty()) {
        note_fail(identity, -1, "empty window");
        return;
    }
    for (int m = a.lo(); m <= a.hi(); ++m) {
        if (!a.block(m).is_zero()) {
            note_fail(identity, m, "nonzero block");
            return;
        }
    }
    note_pass(identity, a.lo(), a.hi());
}

void ValidationReport::check_true(const std::string& identity, bool ok,
                                  const std::string& witness) {
    CheckResult r;
    r.identity = identity;
    r.ok = ok;
    r.witness = witness;
    checks_.push_back(std::move(r));
}

void ValidationReport::merge(const ValidationReport& other) {
    for (const auto& c : other.checks_) {
        CheckResult r = c;
        if (!other.subject_.empty()) r.identity = other.subject_ + ": " + r.identity;
        checks_.push_back(std::move(r));
    }
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
        os << (c.ok ? "pass  " : "FAIL  ") << c.identity;
        if (c.degree >= 0) os << "  [degree " << c.degree << "]";
        if (!c.witness.empty()) os << "  (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

} // namespace paracyc
