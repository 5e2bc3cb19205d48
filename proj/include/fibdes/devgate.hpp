#ifndef FIBDES_DEVGATE_HPP
#define FIBDES_DEVGATE_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fibdes/fib.hpp"
#include "fibdes/numtheory.hpp"

namespace fibdes {

// Difference-set development nonexistence pipeline. A Fibonacci design that
// is the development of a difference set in any group (Abelian or not) must
// survive every gate below; each RuledOut verdict carries a certificate whose
// claims re-derive from scratch via fib_mod / valuations / orders.

enum class GateId { Congruence, Mod216, PrimeDivisor, SquarefreeShortcut, OddOrder, Order2 };
enum class GateOutcome { RuledOut, Pass, Inconclusive, NotApplicable };

const char* gate_name(GateId id);

struct Certificate {
    std::string gate; // gate identifier, or "brc_even" for the v-even case
    FibIndex m = 0;

    std::optional<unsigned> m_mod_12;
    std::optional<unsigned> fib_m_mod_8;

    std::optional<unsigned> m_mod_216;
    std::optional<unsigned> nu3_fib_m_minus_1;
    std::optional<unsigned> fib_m_mod_3;

    std::optional<Int> p; // prime dividing F_m

    std::optional<FibIndex> index;      // j in {m-1, m-2}
    std::vector<Int> squarefree_primes; // distinct primes, product = F_j

    std::optional<Int> q;                 // prime in the square-free part of F_j
    std::optional<unsigned> q_valuation;  // odd nu_q(F_j)
    std::optional<Int> order;             // ord_p(q), even
    std::vector<PrimePower> p_minus_1_factors;
};

struct GateResult {
    GateId gate;
    GateOutcome outcome;
    std::string note;
    std::optional<Certificate> certificate;
    bool ruled_out() const { return outcome == GateOutcome::RuledOut; }
};

enum class VerdictStatus { TrivialExists, NoDesignByBrc, RuledOut, Inconclusive };

const char* verdict_status_name(VerdictStatus s);

struct Verdict {
    FibIndex m = 0;
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::vector<GateResult> reasons; // in fixed gate order, ending at the decisive one
    std::optional<Certificate> certificate;
    std::vector<std::string> missing; // Inconclusive: exactly which data was unavailable
};

// Factor-table file: one line per index,
//   t: f1^e1 * f2^e2 * ... [* C<digits>]
// '^e' defaults to 1; a bare trailing C-token is a composite unfactored
// cofactor. The loader validates the product against fib(t), primality of
// every listed factor and compositeness of the cofactor; a bad line fails
// the load with its line number.
class FactorTable {
public:
    static FactorTable load(const std::string& path);
    static FactorTable parse(std::istream& in, const std::string& origin = "<stream>");

    std::optional<Factorization> lookup(FibIndex t) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::map<FibIndex, Factorization> entries_;
};

// Shared memo for built-in Fibonacci factorizations (divisor chains overlap
// heavily across a scan); thread-safe.
class FibFactorCache {
public:
    Factorization get(FibIndex t, const FactorTable* table, const FactorEffort& effort);

private:
    std::mutex mu_;
    std::map<FibIndex, Factorization> memo_;
};

// Individual gates. Outcomes: RuledOut (with certificate), Pass,
// Inconclusive (missing data), NotApplicable (hypothesis not met).
GateResult congruence_gate(FibIndex m);
GateResult mod216_gate(FibIndex m);
GateResult prime_divisor_gate(FibIndex m, const Factorization& fm_factors);
GateResult squarefree_shortcut(FibIndex m, const Factorization& fm1, const Factorization& fm2);
GateResult odd_order_gate(FibIndex m, const Int& p, const Int& q,
                          const Factorization& p_minus_1);
GateResult order2_gate(FibIndex m, const Factorization& fm_factors,
                       const FactorEffort& effort = {});

struct GateOptions {
    FactorEffort effort{};
    Int small_q_bound = 1000; // odd-order candidates q are probed up to this bound
};

// Fixed pipeline: congruence -> mod216 -> prime_divisor -> squarefree_shortcut
// -> odd_order over all usable (p,q) pairs -> order2; stops at the first
// conclusive RuledOut. m = 3 is the trivial design; other m = 3 (mod 6) fail
// BRC outright.
Verdict development_verdict(FibIndex m, const FactorTable* table = nullptr,
                            const GateOptions& opts = {}, FibFactorCache* cache = nullptr);

// One verdict per odd m in [3, max_m]; results ordered by m regardless of
// worker count.
std::vector<Verdict> scan(FibIndex max_m, const FactorTable* table = nullptr,
                          const GateOptions& opts = {}, unsigned jobs = 1);

// Re-derives every claim in the certificate from scratch, trusting nothing
// but fib_mod / direct residue checks / primality testing / mult_order on
// the factors the certificate itself exhibits. On failure the first failing
// claim is reported.
bool verify_certificate(const Certificate& c, std::string* failing_claim = nullptr);

} // namespace fibdes

#endif
