#!/usr/bin/env python3
"""The small worked examples: matrices of pi, endomorphism fields, twists and census."""

from littlegroups.char_orbits import phi_orbits
from littlegroups.modcheck import endomorphism_field, submodule_census
from littlegroups.rep_builder import build_pi, decompose_pi_over_tilde, image_order
from littlegroups.twisted_group import identify_small_group, make_group, twist_by_rep

PRESETS = {
    "Z/3 (T trivial)": (2, 1, 1, 3),
    "A3 over F_4": (2, 2, 3, 1),
    "S3 over F_2": (2, 1, 3, 2),
}


def show(name, params):
    G = make_group(*params)
    print(f"== {name}: G(p, a, e, f) = {params}, |G| = {G.order}")
    for orb in phi_orbits(G):
        pi = build_pi(G, orb)
        lam = orb.lam
        print(f"  orbit {orb.canonical.key}: degree {orb.degree}, End = F_{G.p ** endomorphism_field(pi)}")
        print(f"    gen_t = {pi.gen_t}")
        print(f"    gen_s = {pi.gen_s}")
        pairs = [(pc.orbit.rep_c, pc.lam.order, pc.lam.log) for pc in decompose_pi_over_tilde(pi, G)]
        print(f"    over l~: {pairs}  (lambda order {lam.order})")
        if orb.degree > 1:
            print(f"    image order {image_order(pi)}, twist {identify_small_group(twist_by_rep(pi, G))}")
            if G.p ** (2 * pi.degree) <= 1 << 16:
                print(f"    submodules of pi^2 isomorphic to pi: {submodule_census(pi, 2)}")


if __name__ == "__main__":
    for name, params in PRESETS.items():
        show(name, params)
