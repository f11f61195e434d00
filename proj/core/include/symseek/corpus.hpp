#pragma once

#include "symseek/strategies.hpp"

namespace symseek {

struct CorpusError : std::runtime_error {
    CorpusError(const std::string& what) : std::runtime_error(what) {}
};

struct CorpusEntry {
    std::string id;
    std::string phi;             // right-hand side of y'' = ...
    std::string expected_sigma;  // empty when the paper gives none
    std::string expected_nu;     // Darboux grammar; empty when nonlocal
    std::vector<std::string> params;
    std::vector<std::string> side_conditions;  // "sym != 0"
    std::string notes;

    Ode2 ode() const;
    std::set<uint32_t> nonzero_codes() const;
};

enum class RunStatus { Match, VerifiedDifferent, NotFound, Error };

const char* status_name(RunStatus s);

struct RunReport {
    std::string id;
    RunStatus status = RunStatus::Error;
    std::string strategy;
    double elapsed = 0.0;
    std::string sigma;          // found sigma, rendered
    bool residual_zero = false; // exact re-verification of the found sigma
    std::string message;        // parse/solve error detail
};

// Parse a JSON array of entries; verifies each expected_sigma against the
// determining PDE and each expected_nu against expected_sigma, so a
// transcription error fails fast at load time.
std::vector<CorpusEntry> corpus_from_json(const std::string& text,
                                          bool self_check = true);
std::vector<CorpusEntry> load_corpus(const std::string& path,
                                     bool self_check = true);

RunReport run_entry(const CorpusEntry& entry, const SearchBudget& budget);

// Bounded worker pool; report order follows entry order.  filter is a shell
// glob on the entry id ("*" matches everything).
std::vector<RunReport> run_corpus(const std::vector<CorpusEntry>& entries,
                                  const SearchBudget& budget, int jobs = 1,
                                  const std::string& filter = "*");

std::string reports_to_json(const std::vector<RunReport>& reports);
std::vector<RunReport> reports_from_json(const std::string& text);

}  // namespace symseek
