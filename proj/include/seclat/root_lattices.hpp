#ifndef SECLAT_ROOT_LATTICES_HPP
#define SECLAT_ROOT_LATTICES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "seclat/lattice.hpp"

namespace seclat {

/// Z^n with the identity basis.
Lattice integer_lattice(int n);

/// A_n: vectors of Z^{n+1} with coordinate sum 0; basis e_i - e_{i+1}.
Lattice root_a(int n);
/// D_n: vectors of Z^n with even coordinate sum (n >= 2).
Lattice root_d(int n);
/// E_6 in R^9 as A_2^3 glued by [1,1,1].
Lattice root_e6();
/// E_7 in R^8 as A_7 glued by [4].
Lattice root_e7();
/// E_8 = D_8 u (D_8 + (1/2)^8).
Lattice root_e8();

/// "Z", "Z^k", "A<n>", "D<n>", "E6", "E7", "E8". Throws UnknownName.
Lattice lattice_from_component(std::string_view name);

/// Direct sum of named components, in order.
Lattice direct_sum_of(const std::vector<std::string>& names);

/// Coset representative [i] of A_n^* / A_n, 0 <= i <= n.
RationalVector a_glue(int n, int i);
/// Coset representative [i] of D_n^* / D_n, 0 <= i <= 3.
RationalVector d_glue(int n, int i);

}  // namespace seclat

#endif
