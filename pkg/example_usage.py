#!/usr/bin/env python3

from graphs.automorphism import aut_order, structural_same_tail
from graphs.coloring import chi_exact, fractional_chromatic, orbit_fractional_coloring
from graphs.core_graph import diameter, odd_girth
from graphs.families import closed_form, hh_graph, sn_vertex_generators
from graphs.homomorphism import orbit_hom, shift_embed
from graphs.independence import alpha_exact, best_constructed_set
from models import FamilyParams, format_fraction


def demo_parameters(p: FamilyParams):
    """Closed forms next to values computed on the graph"""
    g = hh_graph(p)
    report = closed_form(p)
    print(f"\n{p}: {g.vertex_count} vertices, {g.edge_count} edges")
    print(f"  diameter   formula {report.diameter_formula}  computed {diameter(g)}")
    print(f"  odd girth  formula {report.odd_girth_formula}  computed {odd_girth(g)}")


def demo_independence_and_colouring(p: FamilyParams):
    g = hh_graph(p)
    best = best_constructed_set(p)
    alpha = alpha_exact(g, hint=best, transitive=True)
    chi = chi_exact(g)
    print(f"\n{p}: constructed independent set of size {best.size}")
    print(f"  alpha = {alpha.alpha} (certified: {alpha.optimality_certified})")
    print(f"  chi = {chi.chi} (bounds [{chi.lower}, {chi.upper}])")
    if alpha.optimality_certified:
        print(f"  chi* = {format_fraction(fractional_chromatic(p, alpha.alpha))}")


def demo_orbit_map(p: FamilyParams):
    """The S_n orbit of the constructed set as a map into a Kneser graph"""
    g = hh_graph(p)
    s = best_constructed_set(p)
    generators = sn_vertex_generators(p)
    phi = orbit_hom(g, generators, s)
    cover = orbit_fractional_coloring(g, generators, s)
    print(f"\n{p} -> K({phi.ground_size}:{phi.image_size}), ratio {format_fraction(phi.ratio)}")
    print(f"  fractional colouring with {len(cover.weighted_sets)} sets, weight {format_fraction(cover.total_weight)}")


def demo_symmetry(p: FamilyParams):
    g = hh_graph(p)
    found = aut_order(g)
    print(f"\n|Aut {p}| = {found.order} from {len(found.generators)} generators")
    same = structural_same_tail(g, 0, 1, p)
    print(f"  {g.label(0)} and {g.label(1)} share a tail: {same}")


def main():
    print("hhkit walkthrough")
    print("=" * 50)

    demo_parameters(FamilyParams(n=7, r=3))
    demo_independence_and_colouring(FamilyParams(n=5, r=2))
    demo_orbit_map(FamilyParams(n=5, r=2))
    demo_symmetry(FamilyParams(n=5, r=2))

    m = shift_embed(6)
    print(f"\nshift graph S_6 sits induced in H(6:2) on {len(set(m.mapping))} vertices")


if __name__ == "__main__":
    main()
