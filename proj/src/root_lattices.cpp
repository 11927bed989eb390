#include "seclat/root_lattices.hpp"

#include <charconv>

#include "seclat/error.hpp"

namespace seclat {

namespace {

RationalVector concat(const std::vector<RationalVector>& parts) {
    RationalVector out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Lattice glued(const Lattice& base, const std::vector<RationalVector>& glue, std::string label) {
    return build_glue({base, glue, false}).with_label(std::move(label));
}

}  // namespace

Lattice integer_lattice(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Z^n needs n >= 1");
    return Lattice(RationalMatrix::identity(n), 1, n == 1 ? "Z" : "Z^" + std::to_string(n));
}

Lattice root_a(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "A_n needs n >= 1");
    RationalMatrix m(n, n + 1);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1;
        m(i, i + 1) = -1;
    }
    return Lattice(std::move(m), 1, "A" + std::to_string(n));
}

Lattice root_d(int n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "D_n needs n >= 2");
    RationalMatrix m(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        m(i, i) = 1;
        m(i, i + 1) = -1;
    }
    m(n - 1, n - 2) = 1;
    m(n - 1, n - 1) = 1;
    return Lattice(std::move(m), 1, "D" + std::to_string(n));
}

RationalVector a_glue(int n, int i) {
    if (i < 0 || i > n) throw Error(ErrorKind::InvalidArgument, "A_n glue index out of range");
    const int m = n + 1;
    RationalVector v;
    for (int k = 0; k < m - i; ++k) v.emplace_back(i, m);
    for (int k = 0; k < i; ++k) v.emplace_back(-(m - i), m);
    for (auto& x : v) x.canonicalize();
    return v;
}

RationalVector d_glue(int n, int i) {
    RationalVector v(n, Rational(0));
    switch (i) {
        case 0: break;
        case 1: v.assign(n, Rational(1, 2)); break;
        case 2: v[n - 1] = 1; break;
        case 3:
            v.assign(n, Rational(1, 2));
            v[n - 1] = Rational(-1, 2);
            break;
        default: throw Error(ErrorKind::InvalidArgument, "D_n glue index out of range");
    }
    return v;
}

Lattice root_e6() {
    const Lattice base = direct_sum(direct_sum(root_a(2), root_a(2)), root_a(2));
    return glued(base,
                 {RationalVector(9, Rational(0)), concat({a_glue(2, 1), a_glue(2, 1), a_glue(2, 1)}),
                  concat({a_glue(2, 2), a_glue(2, 2), a_glue(2, 2)})},
                 "E6");
}

Lattice root_e7() { return glued(root_a(7), {RationalVector(8, Rational(0)), a_glue(7, 4)}, "E7"); }

Lattice root_e8() { return glued(root_d(8), {RationalVector(8, Rational(0)), d_glue(8, 1)}, "E8"); }

Lattice lattice_from_component(std::string_view name) {
    auto number = [&](std::string_view digits) {
        int v = 0;
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc{} || p != digits.data() + digits.size() || digits.empty())
            throw Error(ErrorKind::UnknownName, "unknown lattice component '" + std::string(name) + "'");
        return v;
    };
    if (name == "Z") return integer_lattice(1);
    if (name.starts_with("Z^")) return integer_lattice(number(name.substr(2)));
    if (name == "E6") return root_e6();
    if (name == "E7") return root_e7();
    if (name == "E8") return root_e8();
    if (name.size() >= 2 && name[0] == 'A') return root_a(number(name.substr(1)));
    if (name.size() >= 2 && name[0] == 'D') {
        const int n = number(name.substr(1));
        if (n < 2) throw Error(ErrorKind::UnknownName, "unknown lattice component '" + std::string(name) + "'");
        return root_d(n);
    }
    throw Error(ErrorKind::UnknownName, "unknown lattice component '" + std::string(name) + "'");
}

Lattice direct_sum_of(const std::vector<std::string>& names) {
    if (names.empty()) throw Error(ErrorKind::InvalidArgument, "no components");
    Lattice l = lattice_from_component(names.front());
    for (std::size_t i = 1; i < names.size(); ++i) l = direct_sum(l, lattice_from_component(names[i]));
    return l;
}

}  // namespace seclat
