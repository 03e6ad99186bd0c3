"""Regenerates tests/oracle_values.hpp with mpmath at 300 digits.

    python3 tests/oracles/reference_values.py > tests/oracle_values.hpp
"""
import mpmath as mp

mp.mp.dps = 300

CONSTANTS = [
    ("e+pi", mp.e + mp.pi),
    ("e*pi", mp.e * mp.pi),
    ("pi+pi^2", mp.pi + mp.pi ** 2),
    ("e", mp.e),
    ("pi", mp.pi),
]
TERMS = 40
MU_ROWS = 12


def cf(x, n):
    out = []
    for _ in range(n):
        a = int(mp.floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


def convergents(a):
    p0, q0, p1, q1 = 1, 0, a[0], 1
    yield p1, q1
    for ak in a[1:]:
        p0, q0, p1, q1 = p1, q1, ak * p1 + p0, ak * q1 + q0
        yield p1, q1


def ident(name):
    return name.replace("+", "_plus_").replace("*", "_times_").replace("^", "")


print("// Generated by tests/oracles/reference_values.py; do not edit.")
print("#pragma once")
print("#include <array>")
print("#include <cstdint>")
print("#include <string_view>")
print()
print("namespace oracle {")
print()
print("struct MuRow { std::uint64_t p; std::uint64_t q; double mu0; };")
print()
for name, x in CONSTANTS:
    a = cf(x, TERMS)
    cid = ident(name)
    print(f"// {name} = {mp.nstr(x, 40)}")
    print(f"inline constexpr std::array<std::string_view, {TERMS}> cf_{cid} = {{")
    print("    " + ", ".join(f'"{v}"' for v in a) + "};")
    rows = []
    for (p, q) in list(convergents(a))[:MU_ROWS]:
        if q == 1 or q >= 2 ** 63:
            mu = "0.0"
        else:
            mu = mp.nstr(-mp.log(abs(x - mp.mpf(p) / q)) / mp.log(q), 17)
        rows.append(f"    MuRow{{{p}u, {q}u, {mu}}}")
    print(f"inline constexpr std::array<MuRow, {MU_ROWS}> mu_{cid} = {{")
    print(",\n".join(rows) + "};")
    print()
print("}  // namespace oracle")
