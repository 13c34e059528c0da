#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "maf/solve.hpp"

namespace maf {

/// Renders a solve result as a canonical JSON document: fixed field order,
/// structural node paths, sorted label lists. Byte-identical for identical
/// runs.
std::string certificate_json(const Instance& inst, const SolveResult& result,
                             std::uint64_t seed,
                             const AgreementForest* greedy = nullptr);

struct CertificateCheck {
  bool ok = false;
  std::string message;  // first failure, empty when ok
};

/// Re-verifies a certificate against the instance it claims to solve:
/// digest, forest feasibility, partition agreement of both forests, dual
/// recomputation, sign constraints, the guaranteed primal/dual fraction and
/// (within the cap) exhaustive load feasibility.
CertificateCheck verify_certificate(const Instance& inst,
                                    const std::string& json_text,
                                    int exhaustive_cap = 12);

}  // namespace maf
