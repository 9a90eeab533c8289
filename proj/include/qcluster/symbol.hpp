#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcluster {

/// Coefficient symbols of the scalar ring Z[q^{±1/2}, z_{j,±}^{±1}, u_j^{±1}].
/// "q" is reserved; z/u symbols carry an integer label. The u_{j,±} variants
/// appear when a wall system is traded for a multi-lamination over J × {+,-}.
struct Symbol {
    enum class Kind : std::uint8_t { Q = 0, ZPlus, ZMinus, U, UPlus, UMinus };

    Kind kind = Kind::Q;
    std::int64_t index = 0;

    static Symbol q() { return {Kind::Q, 0}; }
    static Symbol z_plus(std::int64_t j) { return {Kind::ZPlus, j}; }
    static Symbol z_minus(std::int64_t j) { return {Kind::ZMinus, j}; }
    static Symbol u(std::int64_t j) { return {Kind::U, j}; }
    static Symbol u_plus(std::int64_t j) { return {Kind::UPlus, j}; }
    static Symbol u_minus(std::int64_t j) { return {Kind::UMinus, j}; }

    bool is_q() const { return kind == Kind::Q; }

    friend auto operator<=>(const Symbol&, const Symbol&) = default;

    std::string name() const {
        switch (kind) {
            case Kind::Q: return "q";
            case Kind::ZPlus: return "z+[" + std::to_string(index) + "]";
            case Kind::ZMinus: return "z-[" + std::to_string(index) + "]";
            case Kind::U: return "u[" + std::to_string(index) + "]";
            case Kind::UPlus: return "u+[" + std::to_string(index) + "]";
            case Kind::UMinus: return "u-[" + std::to_string(index) + "]";
        }
        throw std::logic_error("bad symbol kind");
    }
};

} // namespace qcluster
