#pragma once

#include <string>
#include <string_view>

#include "plonka/partition.hpp"
#include "plonka/systems.hpp"

namespace plonka {

/// Parses an algebra document:
///
///     algebra <name>
///     elements <e1> <e2> ...
///     op <name> arity <k>
///     <table>
///
/// Unary tables are `<e> -> <v>` lines, binary tables an n×n grid (row = first argument),
/// higher arities `<e1> ... <ek> -> <v>` lines. '#' starts a comment. Throws ParseError.
Algebra parse_algebra(std::string_view text, unsigned max_arity = kDefaultMaxArity);

/// Canonical document for `alg`; parse_algebra(render_algebra(a)) == a.
std::string render_algebra(const Algebra& alg);

/// Parses a system document:
///
///     system <name>
///     indices <i1> <i2> ...
///     order <i> <j>              # i ≤ j, any number of lines
///     component <i>
///     algebra ... (algebra document)
///     end
///     hom <i> <j>: <e> -> <v> ...
///
/// Throws ParseError for syntax and InputError for violated system clauses.
DirectSystem parse_system(std::string_view text, unsigned max_arity = kDefaultMaxArity);

/// Canonical document for `system` listing covering pairs and their maps.
std::string render_system(const DirectSystem& system);

enum class ReportFormat { Json, Text, Dot };

ReportFormat parse_report_format(std::string_view name);

struct RenderOptions {
    bool include_timing = true;
};

/// Deterministic serialization. JSON carries `schema: 1`, the comparable body under "report" and
/// timing in a separate "timing" field.
std::string render_report(const DecompositionReport& report, ReportFormat format, const RenderOptions& options = {});

/// Isolated family listing (text or json).
std::string render_family(const IsolatedFamily& family, ReportFormat format);

/// Frame listing with covering pairs and complements (text or json).
std::string render_frames(const std::vector<Frame>& frames, ReportFormat format);

/// Partition table as a binary grid block named `f`.
std::string render_partition(const Algebra& alg, const PartitionFunction& f);

/// Axiom report, one line per axiom.
std::string render_axioms(const Algebra& alg, const AxiomReport& report);

}  // namespace plonka
