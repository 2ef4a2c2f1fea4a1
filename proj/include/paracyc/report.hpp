#ifndef PARACYC_REPORT_HPP
#define PARACYC_REPORT_HPP

#include "paracyc/graded.hpp"

#include <string>
#include <vector>

namespace paracyc {

struct CheckResult {
    std::string identity;
    int degree = -1;          // -1: applies to the whole window
    bool ok = false;
    std::string witness;      // failure detail / window note
};

// Accumulates exact identity checks.  Every entry records the identity by
// formula, the degree range it was verified on, and a witness on failure.
class ValidationReport {
public:
    explicit ValidationReport(std::string subject = "") : subject_(std::move(subject)) {}

    const std::string& subject() const { return subject_; }
    const std::vector<CheckResult>& checks() const { return checks_; }

    bool all_ok() const;
    std::vector<CheckResult> failures() const;

    void add(CheckResult r) { checks_.push_back(std::move(r)); }
    void note_pass(const std::string& identity, int lo, int hi);
    void note_fail(const std::string& identity, int degree, const std::string& witness);

    // Exact equality of two graded maps on their common window.
    void check_equal(const std::string& identity, const GradedMap& a, const GradedMap& b);
    void check_zero(const std::string& identity, const GradedMap& a);
    void check_true(const std::string& identity, bool ok, const std::string& witness = "");

    void merge(const ValidationReport& other);

    std::string to_text() const;

private:
    std::string subject_;
    std::vector<CheckResult> checks_;
};

} // namespace paracyc

#endif
