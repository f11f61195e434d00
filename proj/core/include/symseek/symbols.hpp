#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symseek {

// Undetermined symbols: a_i belong to the sigma-numerator candidate,
// b_j to the denominator candidate, c_k to the auxiliary polynomial of
// the linear prefilter, Param are the ODE's own parameters.
enum class SymKind : uint8_t { A = 0, B = 1, C = 2, Param = 3 };

struct Sym {
    uint32_t code = 0;

    static Sym a(uint32_t i) { return make(SymKind::A, i); }
    static Sym b(uint32_t i) { return make(SymKind::B, i); }
    static Sym c(uint32_t i) { return make(SymKind::C, i); }
    static Sym param(const std::string& name);

    static Sym make(SymKind k, uint32_t idx) {
        return Sym{(static_cast<uint32_t>(k) << 24) | (idx & 0xffffffu)};
    }

    SymKind kind() const { return static_cast<SymKind>(code >> 24); }
    uint32_t index() const { return code & 0xffffffu; }
    bool is_param() const { return kind() == SymKind::Param; }

    std::string name() const;  // "a3", "b0", "c12" or the parameter name

    bool operator==(const Sym& o) const { return code == o.code; }
    bool operator!=(const Sym& o) const { return code != o.code; }
    bool operator<(const Sym& o) const { return code < o.code; }
};

// Process-wide parameter name interning (append-only, thread-safe).
uint32_t intern_param(const std::string& name);
const std::string& param_name(uint32_t idx);

}  // namespace symseek
