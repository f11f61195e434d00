#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace symseek {

enum class Var : int { X = 0, Y = 1, Z = 2 };

// Power product x^a y^b z^c.  z stands for y' throughout.
struct Mono {
    std::array<uint32_t, 3> e{0, 0, 0};

    static Mono one() { return Mono{}; }
    static Mono var(Var v, uint32_t k = 1) {
        Mono m;
        m.e[static_cast<int>(v)] = k;
        return m;
    }

    uint32_t deg() const { return e[0] + e[1] + e[2]; }
    uint32_t operator[](Var v) const { return e[static_cast<int>(v)]; }

    Mono operator*(const Mono& o) const {
        Mono r;
        for (int i = 0; i < 3; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    bool divides(const Mono& o) const {
        for (int i = 0; i < 3; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    // Requires this->divides(o).
    Mono quotient_into(const Mono& o) const {
        Mono r;
        for (int i = 0; i < 3; ++i) r.e[i] = o.e[i] - e[i];
        return r;
    }

    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator!=(const Mono& o) const { return e != o.e; }

    // grevlex with x > y > z: compare total degree, ties broken by the
    // last variable in which the exponents differ (bigger exponent there
    // means smaller monomial).
    bool operator<(const Mono& o) const {
        uint32_t da = deg(), db = o.deg();
        if (da != db) return da < db;
        for (int i = 2; i >= 0; --i) {
            if (e[i] != o.e[i]) return e[i] > o.e[i];
        }
        return false;
    }

    // "x^2*y", "1" for the unit.
    std::string str() const;
};

}  // namespace symseek
