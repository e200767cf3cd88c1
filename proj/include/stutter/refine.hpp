#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stutter/lts.hpp"
#include "stutter/partition.hpp"
#include "stutter/signature.hpp"

namespace stutter {

/// Successive partitions of the final-chain refinement, starting from the
/// single block and ending at the first partition that no longer splits.
std::vector<Partition> refine_rounds(const Lts& lts, Semantics sem,
                                     SignatureScope scope = SignatureScope::one_step);

/// Coarsest partition whose blocks have equal signature automata. With the
/// default one-step scope this is the classical equivalence for every
/// semantics; full_paths uses the literal path encoding.
Partition refine(const Lts& lts, Semantics sem, SignatureScope scope = SignatureScope::one_step);

/// Largest bisimulation computed by deleting pairs that violate the
/// classical transfer property until stable.
Partition classical_partition(const Lts& lts, Semantics sem);

/// Refinement-based equivalence check. Debug builds cross-check the one-step
/// scope against classical_partition.
bool equivalent(const Lts& lts, StateId x, StateId y, Semantics sem,
                SignatureScope scope = SignatureScope::one_step);

/// Evidence for two states being told apart: the round whose partition
/// still grouped them and a shortest word in exactly one signature language.
struct Distinction {
    Partition partition;
    SymbolWord word;
    /// True when the word belongs to the first state's signature.
    bool in_first = false;
};
std::optional<Distinction> distinguish(const Lts& lts, StateId x, StateId y, Semantics sem,
                                       SignatureScope scope = SignatureScope::one_step);

std::string render_word(const SymbolWord& w, const Partition& part, const Lts& lts);

struct Quotient {
    Lts lts;
    Partition partition;
};

/// Quotient on the refine blocks; silent steps inside a block are dropped.
Quotient minimize(const Lts& lts, Semantics sem, SignatureScope scope = SignatureScope::one_step);
Quotient quotient(const Lts& lts, const Partition& part);

}  // namespace stutter
