#pragma once

// Seeded simulators for nonlocal boxes:
//   - PR boxes (a+b = x*y mod 2, uniform marginals, one use per side)
//   - the order-dependent hidden-variable mechanism ("Bohm box"): a register
//     records which input came first and a hidden lambda, uniform on [0,1),
//     routes the AND of the inputs to the later output
//   - quantum boxes p(a,b|x,y) = (1 + (-1)^(a+b) cos(alpha_x - beta_y))/4
// plus session logging, empirical array estimation, and the one-bit guessing
// game (Bob guesses a designated one of Alice's two bits after receiving one
// classical bit).
//
// Per round the generator is drawn in a fixed documented order (x, y, then
// the box's own draws), so sessions replay bit-for-bit from the seed.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nlbox/correlation.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/rng.hpp"
#include "nlbox/tables.hpp"
#include "nlbox/vertices.hpp"

namespace nlbox {

struct BitPair {
    int a = 0, b = 0;
};

// ---------------------------------------------------------------------------
// PR box

// Fresh-box sampling: a uniform, b = a + x*y (mod 2).
inline BitPair pr_sample(int x, int y, RngState& rng) {
    int a = rng.next_bit();
    return {a, a ^ (x & y)};
}

// One-shot PR box: each side may deliver its input exactly once. The hidden
// uniform bit is drawn at creation; the first side to answer returns it, the
// second side returns the value forced by the PR constraint.
class PrBox {
  public:
    explicit PrBox(RngState& rng) : hidden_(rng.next_bit()) {}

    int input_alice(int x) {
        if (alice_) throw BoxConsumed("Alice side of this PR box already answered");
        alice_ = x & 1;
        a_ = bob_ ? (b_.value() ^ (*alice_ & bob_.value())) : hidden_;
        return a_.value();
    }

    int input_bob(int y) {
        if (bob_) throw BoxConsumed("Bob side of this PR box already answered");
        bob_ = y & 1;
        b_ = alice_ ? (a_.value() ^ (alice_.value() & *bob_)) : hidden_;
        return b_.value();
    }

  private:
    int hidden_;
    std::optional<int> alice_, bob_;
    std::optional<int> a_, b_;
};

// ---------------------------------------------------------------------------
// Bohm box mechanism

enum class InputOrder { AliceFirst, BobFirst, Simultaneous };

inline std::string to_string(InputOrder o) {
    switch (o) {
        case InputOrder::AliceFirst: return "alice-first";
        case InputOrder::BobFirst: return "bob-first";
        default: return "simultaneous";
    }
}

// Outputs for a fixed hidden variable. Interval conventions are half-open as
// listed: alice-first gives (0, x*y) for lambda < 1/2 and (1, x*y+1)
// otherwise; bob-first mirrors the roles; simultaneous selects those four
// cases by the quartile of lambda.
inline BitPair bohm_outputs(double lambda, int x, int y, InputOrder order) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw LambdaOutOfRange("lambda must lie in [0,1)");
    int g = x & y;
    switch (order) {
        case InputOrder::AliceFirst:
            return lambda < 0.5 ? BitPair{0, g} : BitPair{1, g ^ 1};
        case InputOrder::BobFirst:
            return lambda < 0.5 ? BitPair{g, 0} : BitPair{g ^ 1, 1};
        default:
            if (lambda < 0.25) return {0, g};
            if (lambda < 0.5) return {1, g ^ 1};
            if (lambda < 0.75) return {g, 0};
            return {g ^ 1, 1};
    }
}

// The deterministic array the mechanism realizes at fixed lambda and order.
// These arrays are signaling (the later output reveals the remote input);
// only the lambda-average is not.
inline CorrelationArray bohm_conditional_array(double lambda, InputOrder order) {
    std::array<Rational, CorrelationArray::kEntries> e{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            BitPair out = bohm_outputs(lambda, x, y, order);
            e[static_cast<std::size_t>(CorrelationArray::index(x, y, out.a, out.b))] = 1;
        }
    }
    return make_array(std::move(e));
}

// One-shot boxed form; lambda is sampled once at creation and fixed for the
// box's lifetime.
class BohmBox {
  public:
    explicit BohmBox(RngState& rng) : lambda_(rng.next_unit()) {}

    double lambda() const { return lambda_; }

    BitPair outputs(int x, int y, InputOrder order) {
        if (used_) throw BoxConsumed("this Bohm box already answered");
        used_ = true;
        return bohm_outputs(lambda_, x, y, order);
    }

  private:
    double lambda_;
    bool used_ = false;
};

// ---------------------------------------------------------------------------
// Quantum boxes (double precision; these are deliberately not exact)

struct QuantumBoxSettings {
    double alpha0 = 0.0, alpha1 = 0.0;
    double beta0 = 0.0, beta1 = 0.0;

    double alpha(int x) const { return x ? alpha1 : alpha0; }
    double beta(int y) const { return y ? beta1 : beta0; }
};

// Angles saturating the quantum bound: E = cos(pi/4) = 1/sqrt(2).
inline QuantumBoxSettings tsirelson_settings() {
    using std::numbers::pi;
    return {0.0, pi / 2, pi / 4, -pi / 4};
}

// Float-valued counterpart of CorrelationArray, same index conventions.
struct FloatArray {
    std::array<double, CorrelationArray::kEntries> p{};

    double at(int x, int y, int a, int b) const {
        return p[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))];
    }
    double& at(int x, int y, int a, int b) {
        return p[static_cast<std::size_t>(CorrelationArray::index(x, y, a, b))];
    }

    // Entry/cell validation with the float tolerance.
    bool valid(double tol = 1e-9) const {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                double sum = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        double v = at(x, y, a, b);
                        if (v < -tol || v > 1 + tol) return false;
                        sum += v;
                    }
                if (std::fabs(sum - 1.0) > tol) return false;
            }
        return true;
    }
};

inline FloatArray to_float(const CorrelationArray& arr) {
    FloatArray f;
    for (int i = 0; i < CorrelationArray::kEntries; ++i)
        f.p[static_cast<std::size_t>(i)] = arr[i].convert_to<double>();
    return f;
}

struct ChshStatsFloat {
    std::array<double, 4> expectations{};
    double K = 0, E = 0;
};

inline ChshStatsFloat chsh_float(const FloatArray& f) {
    ChshStatsFloat s;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            s.expectations[static_cast<std::size_t>(x * 2 + y)] =
                f.at(x, y, 0, 0) + f.at(x, y, 1, 1) - f.at(x, y, 0, 1) - f.at(x, y, 1, 0);
    s.K = s.expectations[0] + s.expectations[1] + s.expectations[2] - s.expectations[3];
    s.E = s.K / 4;
    return s;
}

inline double sim_success_probability_float(const FloatArray& f) {
    return 0.5 * (1.0 + chsh_float(f).K / 4.0);
}

inline FloatArray quantum_array(const QuantumBoxSettings& s) {
    FloatArray f;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double c = std::cos(s.alpha(x) - s.beta(y));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    f.at(x, y, a, b) = 0.25 * (1.0 + ((a ^ b) ? -c : c));
        }
    }
    return f;
}

inline BitPair quantum_sample(const QuantumBoxSettings& s, int x, int y, RngState& rng) {
    FloatArray f = quantum_array(s);
    double u = rng.next_unit();
    double acc = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            acc += f.at(x, y, a, b);
            if (u < acc) return {a, b};
        }
    return {1, 1};
}

// Exact rationalization of a float array: each entry rounded to the nearest
// multiple of 1/max_den. The result must pass exact validation. This is the
// explicit bridge from float-valued (quantum) arrays into the exact polytope
// machinery.
inline CorrelationArray rationalize(const FloatArray& f, long long max_den = 1000000) {
    std::array<Rational, CorrelationArray::kEntries> e;
    for (int i = 0; i < CorrelationArray::kEntries; ++i) {
        double scaled = f.p[static_cast<std::size_t>(i)] * static_cast<double>(max_den);
        Rational r(std::llround(scaled));
        r /= max_den;
        e[static_cast<std::size_t>(i)] = r;
    }
    return make_array(std::move(e));
}

// ---------------------------------------------------------------------------
// Sessions

enum class BoxKind { Pr, Bohm, Quantum, Classical };

inline std::string to_string(BoxKind k) {
    switch (k) {
        case BoxKind::Pr: return "pr";
        case BoxKind::Bohm: return "bohm";
        case BoxKind::Quantum: return "quantum";
        default: return "classical";
    }
}

struct SessionConfig {
    BoxKind kind = BoxKind::Pr;
    long rounds = 1;
    std::uint64_t seed = 0;
    InputOrder order = InputOrder::AliceFirst;   // Bohm only
    bool disclose_lambda = false;                // Bohm only
    QuantumBoxSettings settings = tsirelson_settings();  // quantum only
    int vertex_id = 0;                           // classical only
};

struct SessionRound {
    int x = 0, y = 0, a = 0, b = 0;
    std::optional<double> lambda;
};

struct BoxSession {
    SessionConfig config;
    std::vector<SessionRound> rounds;
};

// The exact (or float) array a box kind realizes; reference for analytics.
inline FloatArray analytic_array(const SessionConfig& cfg) {
    switch (cfg.kind) {
        case BoxKind::Quantum: return quantum_array(cfg.settings);
        case BoxKind::Classical:
            return to_float(DeterministicVertex{static_cast<std::uint8_t>(cfg.vertex_id)}.array());
        default: return to_float(tables::pr_box());  // PR and Bohm average alike
    }
}

inline BitPair sample_box(const SessionConfig& cfg, int x, int y, RngState& rng,
                          std::optional<double>* lambda_out = nullptr) {
    switch (cfg.kind) {
        case BoxKind::Pr:
            return pr_sample(x, y, rng);
        case BoxKind::Bohm: {
            double lambda = rng.next_unit();
            if (lambda_out && cfg.disclose_lambda) *lambda_out = lambda;
            return bohm_outputs(lambda, x, y, cfg.order);
        }
        case BoxKind::Quantum:
            return quantum_sample(cfg.settings, x, y, rng);
        default: {
            DeterministicVertex v{static_cast<std::uint8_t>(cfg.vertex_id)};
            return {v.a(x, y), v.b(x, y)};
        }
    }
}

// Uniform independent inputs; per round the draws are x, y, then the box's.
inline BoxSession run_session(const SessionConfig& cfg) {
    if (cfg.rounds < 1) throw DomainError("session needs at least one round");
    BoxSession session;
    session.config = cfg;
    session.rounds.reserve(static_cast<std::size_t>(cfg.rounds));
    RngState rng{cfg.seed, 0};
    for (long i = 0; i < cfg.rounds; ++i) {
        SessionRound r;
        r.x = rng.next_bit();
        r.y = rng.next_bit();
        std::optional<double> lambda;
        BitPair out = sample_box(cfg, r.x, r.y, rng, &lambda);
        r.a = out.a;
        r.b = out.b;
        r.lambda = lambda;
        session.rounds.push_back(r);
    }
    return session;
}

struct EmpiricalArray {
    FloatArray estimate;
    std::array<double, CorrelationArray::kEntries> standard_error{};
    std::array<long, 4> cell_counts{};  // rounds with input pair (x,y), index 2x+y
};

inline EmpiricalArray empirical_array(const BoxSession& session) {
    std::array<long, CorrelationArray::kEntries> counts{};
    std::array<long, 4> cells{};
    for (const SessionRound& r : session.rounds) {
        ++counts[static_cast<std::size_t>(CorrelationArray::index(r.x, r.y, r.a, r.b))];
        ++cells[static_cast<std::size_t>(r.x * 2 + r.y)];
    }
    EmpiricalArray e;
    e.cell_counts = cells;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            long n = cells[static_cast<std::size_t>(x * 2 + y)];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    std::size_t i =
                        static_cast<std::size_t>(CorrelationArray::index(x, y, a, b));
                    double p = n ? static_cast<double>(counts[i]) / static_cast<double>(n) : 0.0;
                    e.estimate.p[i] = p;
                    e.standard_error[i] =
                        n ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
                }
        }
    return e;
}

// Largest per-cell total variation between an estimate and a reference array.
inline double total_variation(const FloatArray& f, const CorrelationArray& ref) {
    double worst = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double tv = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    tv += std::fabs(f.at(x, y, a, b) - ref.at(x, y, a, b).convert_to<double>());
            worst = std::max(worst, 0.5 * tv);
        }
    return worst;
}

// ---------------------------------------------------------------------------
// Guessing game, n = 1 (Alice holds two random bits, sends one bit)
//
// Protocol: Alice draws bits a0, a1 and inputs x = a0+a1; Bob draws the index
// k he must guess and inputs y = k; Alice sends m = a0 + a; Bob guesses
// m + b. The guess is correct exactly when a + b = x*y, so the success rate
// is the box's simulation success probability (1 + E)/2.

struct GameResult {
    long rounds = 0;
    long correct = 0;
    double empirical_p = 0;
    double analytic_p = 0;
    double standard_error = 0;
};

inline GameResult guessing_game_n1(const SessionConfig& cfg) {
    if (cfg.rounds < 1) throw DomainError("game needs at least one round");
    RngState rng{cfg.seed, 0};
    GameResult res;
    res.rounds = cfg.rounds;
    for (long i = 0; i < cfg.rounds; ++i) {
        int a0 = rng.next_bit();
        int a1 = rng.next_bit();
        int k = rng.next_bit();
        int x = a0 ^ a1;
        int y = k;
        BitPair out = sample_box(cfg, x, y, rng, nullptr);
        int m = a0 ^ out.a;
        int guess = m ^ out.b;
        int target = k ? a1 : a0;
        if (guess == target) ++res.correct;
    }
    res.empirical_p = static_cast<double>(res.correct) / static_cast<double>(res.rounds);
    res.analytic_p = sim_success_probability_float(analytic_array(cfg));
    res.standard_error = std::sqrt(res.analytic_p * (1.0 - res.analytic_p) /
                                   static_cast<double>(res.rounds));
    return res;
}

}  // namespace nlbox
