#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tc8/graph.hpp"
#include "tc8/patterns.hpp"

namespace tc8 {

using Charge = boost::rational<long long>;

std::string format_charge(const Charge& c); // "p/q", or "p" when q = 1
Charge parse_charge(const std::string& s);

struct Bearer {
    enum Kind { Vertex, Face } kind = Vertex;
    int id = 0;
    bool operator==(const Bearer&) const = default;
    std::string name() const;
};

struct ChargeLedger {
    enum Phase { Initial, Final } phase = Initial;
    std::vector<Charge> vertex;
    std::vector<Charge> face;
    Charge total() const;
    Charge& at(const Bearer& b) { return b.kind == Bearer::Vertex ? vertex.at(b.id) : face.at(b.id); }
    const Charge& at(const Bearer& b) const { return b.kind == Bearer::Vertex ? vertex.at(b.id) : face.at(b.id); }
    bool operator==(const ChargeLedger&) const = default;
};

enum class Rule { R1 = 1, R2, R3, R4, R5 };

struct Transfer {
    Rule rule;
    Bearer from;
    Bearer to;
    Charge amount;
    bool operator==(const Transfer&) const = default;
};

using TransferLog = std::vector<Transfer>;

ChargeLedger initial_charges(const PlanarEmbedding& g);

struct RuleResult {
    ChargeLedger ledger;
    TransferLog log;
};

// All rules read the initial state and are applied at once.
RuleResult apply_rules(const PlanarEmbedding& g, const ChargeLedger& initial);

// Re-validates every entry against its rule and checks that the log is
// exactly the set of transfers the rules prescribe; LogMismatch otherwise.
ChargeLedger replay(const PlanarEmbedding& g, const ChargeLedger& initial, const TransferLog& log);

std::string format_log(const TransferLog& log);
// Rejects malformed lines and a record count that disagrees with the
// header (LogMismatch).
TransferLog parse_log(const std::string& text);

struct VertexDiagnostic {
    int vertex = 0;
    int degree = 0;
    int m3 = 0;
    int n2 = 0;
    int n3 = 0;
    int big_triangles = 0;  // incident (5+,5+,8)-triangles, v being the 8
    int rich_faces = 0;     // incident 5+-faces meeting v between two 3- neighbours
    std::string case_label;
    std::string bound;      // empty when no case of the analysis applies
    Charge bound_value;
    Charge final_charge;
};

struct AuditReport {
    bool in_regime = true; // max degree <= 8
    int max_degree = 0;
    Charge initial_total;
    Charge final_total;
    std::vector<std::pair<Bearer, Charge>> negative;
    std::vector<StructuralViolation> violations;
    std::vector<int> repeated_vertex_faces;
    std::vector<VertexDiagnostic> diagnostics;
    std::string verdict() const; // "nonnegative", "justified" or "unexplained"
};

// Never throws DeltaExceeded; out-of-regime graphs get in_regime = false.
AuditReport audit(const PlanarEmbedding& g);
// Throws DeltaExceeded when max degree > 8.
AuditReport audit_strict(const PlanarEmbedding& g);

std::string format_audit(const PlanarEmbedding& g, const AuditReport& r);
std::string format_audit_json(const PlanarEmbedding& g, const AuditReport& r);

// Evaluates bound expressions such as "4+1/3-5×1/2-5×1/3".
Charge evaluate_bound(const std::string& expr);
VertexDiagnostic classify_vertex(const PlanarEmbedding& g, const ChargeLedger& final_ledger, int v);

} // namespace tc8
