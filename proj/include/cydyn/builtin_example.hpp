#ifndef CYDYN_BUILTIN_EXAMPLE_HPP
#define CYDYN_BUILTIN_EXAMPLE_HPP

namespace cydyn {

/* Byte-for-byte copy of configs/p2xp2xp2_111.cfg so `reproduce-paper` works
 * without a file argument.  A test compares this string against the shipped
 * file; update both together.
 */
inline const char* builtin_example_config() {
    return R"CFG(# Complete intersection of three generic (1,1,1) hypersurfaces in
# P^2 x P^2 x P^2, with the three fiberwise translations phi_ijk and their
# composite in the listed order.
schema_version 1

[ambient]
dims 2 2 2

[variety]
hypersurface 1 1 1
hypersurface 1 1 1
hypersurface 1 1 1

[fibrations]
indices 1 2 3

[maps]
map phi_123 1 2 3
map phi_231 2 3 1
map phi_312 3 1 2

[composition]
order phi_123 phi_231 phi_312

[hypotheses]
minimal_calabi_yau true
dimension 3
picard_number 3
m_abundant true

[options]
depth 3
width 1/1000000000

[reference]
# Published pushforward of the fixed-space generator under phi_123; the run
# recomputes it and reports any disagreement.
expect_pushforward_of_fixed phi_123 -17 -1 4
)CFG";
}

} // namespace cydyn

#endif
