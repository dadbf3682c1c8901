"""Fixed-graph contributions and their sum.

Every decorated tree is turned into a ratio of products of specialized
torus weights (edge-cover cohomology plus node adjustments), times one
moduli integral per contracted component, divided by the automorphism
count.  Summing over graphs must produce a Laurent polynomial in the
single surviving parameter with no negative part; the invariant is its
constant coefficient.

Zero weights are meaningful and handled in three distinct ways:

* a *specialized* zero confined to the numerator kills the graph (it
  contributes zero; this is how the chain substitution prunes most
  trees),
* a specialized zero in a denominator factor cancels exactly against a
  *proportional* vanishing numerator form when one exists (the pair
  contributes the ratio of their scales); with no such partner the
  substitution is degenerate for this target
  (``SpecializationDegenerate``),
* an *identically* vanishing weight that the two expected edge scaling
  directions do not account for indicates an inconsistency
  (``ZeroWeight``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

from gwloc.exact import LinForm, NotPolynomial, specialize_linform
from gwloc.footballs import (FootballBundle, NoSuchCover, WeightClass,
                             edge_cover_data)
from gwloc.targets import (Specialization, WeightedProjSpace,
                           bundle_fiber_weight, chain_specialization,
                           find_chain_structures, hyperplane_lift,
                           tangent_weights)
from gwloc.trees import (DegreeNotRepresentable, GraphAut, LocGraph,
                         enumerate_graphs, graph_aut)
from gwloc.vertex import (DEFAULT_CONVENTIONS, Conventions, FlagData,
                          flag_monodromy, sector_balanced, sector_bundle,
                          sector_rank, vertex_factor)


class SpecializationDegenerate(ValueError):
    """A localization denominator specialized to zero."""


class ZeroWeight(ValueError):
    """An identically vanishing weight survived the scaling bookkeeping."""


class UnbalancedSector(ValueError):
    """A vertex whose flag monodromies do not sum to zero."""


# ---------------------------------------------------------------------------
# Flags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """One (vertex, edge) incidence with its source-side isotropy data."""

    vertex: int
    edge: int
    r: int
    character: int
    monodromy: int
    omega: LinForm


@lru_cache(maxsize=None)
def _cover(wu: int, wv: int, degree: int):
    return edge_cover_data(wu, wv, degree)


def _flag_table(space: WeightedProjSpace, graph: LocGraph, covers):
    flags = [[] for _ in range(graph.n_vertices)]
    for idx, (a, b, d) in enumerate(graph.edges):
        cov = covers[idx]
        ju, jv = graph.labels[a], graph.labels[b]
        wu, wv = space.weight(ju), space.weight(jv)
        tu = LinForm.unit(ju, Fraction(1, wu))
        tv = LinForm.unit(jv, Fraction(1, wv))
        om_u = (tv - tu).scale(Fraction(cov.rho2, cov.m))
        om_v = (tu - tv).scale(Fraction(cov.rho1, cov.m))
        c_u = cov.rho2 * pow(cov.m, -1, cov.rho1) % cov.rho1 if cov.rho1 > 1 else 0
        c_v = cov.rho1 * pow(cov.m, -1, cov.rho2) % cov.rho2 if cov.rho2 > 1 else 0
        flags[a].append(Flag(a, idx, cov.rho1, c_u,
                             flag_monodromy(wu, cov.rho1, c_u), om_u))
        flags[b].append(Flag(b, idx, cov.rho2, c_v,
                             flag_monodromy(wv, cov.rho2, c_v), om_v))
    return flags


# ---------------------------------------------------------------------------
# Per-edge weight data (cached: the same decorated edge appears in many
# graphs, and within a run the specialization is fixed)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _edge_forms(space: WeightedProjSpace, cov, ju: int, jv: int, degree: int):
    """(tangent_plus, tangent_minus, obs_plus, obs_minus) linear forms of
    one covered edge.  The two identically vanishing section weights (the
    scaling direction of the cover and the one absorbed by the vertex
    normalization sequence) are removed here; any other identically zero
    weight is an inconsistency."""
    t_plus, t_minus = [], []
    for k in range(1, space.n + 1):
        fb = FootballBundle(cov, space.weight(k), ju, jv, LinForm.unit(k))
        t_plus.extend(fb.h0_weights())
        t_minus.extend(fb.h1_weights())
    zeros = [f for f in t_plus if f.is_zero()]
    if len(zeros) != 2:
        raise ZeroWeight(
            f"edge ({ju},{jv}) cover {cov.rho1},{cov.rho2},{cov.m}: expected "
            f"exactly two scaling zeros, found {len(zeros)}")
    t_plus = [f for f in t_plus if not f.is_zero()]
    if any(f.is_zero() for f in t_minus):
        raise ZeroWeight("identically zero tangent obstruction weight on edge")
    o_plus, o_minus = [], []
    if degree:
        fb = FootballBundle(cov, degree, ju, jv, LinForm())
        o_plus = list(fb.h0_weights())
        o_minus = list(fb.h1_weights())
        if any(f.is_zero() for f in o_plus + o_minus):
            raise ZeroWeight("identically zero bundle weight on edge")
    return tuple(t_plus), tuple(t_minus), tuple(o_plus), tuple(o_minus)


@lru_cache(maxsize=None)
def _ray(f: LinForm):
    """Split a nonzero form into (direction, scale): the direction is the
    form scaled to leading coefficient 1, so two forms are proportional
    exactly when their directions agree."""
    scale = f.terms[0][1]
    return tuple((j, c / scale) for j, c in f.terms), scale


# ---------------------------------------------------------------------------
# Graph analysis: multiset adjustments and component descriptors
# ---------------------------------------------------------------------------


@dataclass
class ComponentData:
    """A contracted component: its point's isotropy, adjacent flags,
    marking count, and the nontrivial-sector bundles on either side."""

    vertex: int
    w: int
    flags: tuple          # of Flag
    n_marks: int
    numer: tuple          # (character, weight LinForm) with h1 >= 1
    denom: tuple          # same, for the obstruction line


@dataclass
class Analysis:
    covers: list
    flags: list
    t_plus: list          # extra tangent weights (smoothings, invariant sections)
    t_minus: list         # removed tangent weights (autos, node identifications)
    o_plus: list
    o_minus: list
    components: list      # ComponentData
    stacky_nodes: list    # (w, r) of 2-valent nodes at stacky points


def _analyze(space: WeightedProjSpace, graph: LocGraph, degree: int) -> Analysis:
    covers = []
    for (a, b, d) in graph.edges:
        covers.append(_cover(space.weight(graph.labels[a]),
                             space.weight(graph.labels[b]), d))
    flags = _flag_table(space, graph, covers)
    for v in range(graph.n_vertices):
        w = space.weight(graph.labels[v])
        if not sector_balanced(w, [f.monodromy for f in flags[v]]):
            raise UnbalancedSector(f"vertex {v} (point {graph.labels[v]})")

    an = Analysis(covers, flags, [], [], [], [], [], [])
    for v in range(graph.n_vertices):
        j = graph.labels[v]
        w = space.weight(j)
        fl = flags[v]
        nm = len(graph.marks[v])
        val = len(fl) + nm
        if val == 1:
            # free end: the cover's translation automorphism
            an.t_minus.append(fl[0].omega)
        elif val == 2 and len(fl) == 2:
            r = fl[0].r
            assert fl[1].r == r, "balanced node must have equal isotropy"
            an.t_plus.append(fl[0].omega + fl[1].omega)
            for tw in tangent_weights(space, j):
                if tw.character * fl[0].monodromy % w == 0:
                    an.t_minus.append(tw.form)
            if degree and degree * fl[0].monodromy % w == 0:
                an.o_minus.append(bundle_fiber_weight(space, degree, j))
            if w > 1:
                an.stacky_nodes.append((w, r))
        elif val == 2:
            pass  # edge end carrying the marking; no adjustment
        else:
            monos = [f.monodromy for f in fl]
            numer, denom = [], []
            for tw in tangent_weights(space, j):
                if all(tw.character * e % w == 0 for e in monos):
                    an.t_plus.append(tw.form)
                elif sector_rank(w, tw.character, monos) >= 1:
                    numer.append((tw.character, tw.form))
                for f in fl:
                    if tw.character * f.monodromy % w == 0:
                        an.t_minus.append(tw.form)
            if degree:
                chi = degree % w
                fiber = bundle_fiber_weight(space, degree, j)
                if all(chi * e % w == 0 for e in monos):
                    an.o_plus.append(fiber)
                elif sector_rank(w, chi, monos) >= 1:
                    denom.append((chi, fiber))
                for f in fl:
                    if chi * f.monodromy % w == 0:
                        an.o_minus.append(fiber)
            an.components.append(ComponentData(v, w, tuple(fl), nm,
                                               tuple(numer), tuple(denom)))
    return an


def virtual_tangent_class(space: WeightedProjSpace,
                          graph: LocGraph) -> WeightClass:
    """Weight multiset of the movable virtual tangent space of a graph:
    edge-cover section weights plus node smoothings, minus automorphism
    and node-identification weights.  Twisted-sector bundles on
    contracted components are not weight multisets and live in the
    component integrals instead."""
    an = _analyze(space, graph, 0)
    wc = WeightClass()
    for idx, (a, b, d) in enumerate(graph.edges):
        tp, tm, _, _ = _edge_forms(space, an.covers[idx],
                                   graph.labels[a], graph.labels[b], 0)
        wc = wc.add(WeightClass(tp, tm))
    return wc.with_plus(*an.t_plus).with_minus(*an.t_minus)


def obstruction_class(space: WeightedProjSpace, degree: int,
                      graph: LocGraph) -> WeightClass:
    """Weight multiset of the movable obstruction space (bundle side)."""
    if degree <= 0:
        raise ValueError("obstruction requires a positive bundle degree")
    an = _analyze(space, graph, degree)
    wc = WeightClass()
    for idx, (a, b, d) in enumerate(graph.edges):
        _, _, op, om = _edge_forms(space, an.covers[idx],
                                   graph.labels[a], graph.labels[b], degree)
        wc = wc.add(WeightClass(op, om))
    return wc.with_plus(*an.o_plus).with_minus(*an.o_minus)


# ---------------------------------------------------------------------------
# Component factors (memoized across graphs)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _component_factor(w: int, flag_sig, n_marks: int, numer_sig, denom_sig,
                      conv: Conventions):
    """flag_sig: ((r, omega_value, monodromy), ...); numer/denom_sig:
    ((character, omega_value), ...).  Returns the factor as a tuple of
    (t-degree, Fraction) items."""
    flags = [FlagData(r, om, e) for (r, om, e) in flag_sig]
    monos = tuple(e for (_, _, e) in flag_sig) + (0,) * n_marks
    m = len(monos)
    cap = m - 3
    numer = [sector_bundle(w, chi, monos, om, cap, conv.chiodo_boundary)
             for (chi, om) in numer_sig]
    denom = [sector_bundle(w, chi, monos, om, cap, conv.chiodo_boundary)
             for (chi, om) in denom_sig]
    out = vertex_factor(w, flags, n_marks, numer, denom, conv)
    return tuple(sorted(out.items()))


# ---------------------------------------------------------------------------
# One graph
# ---------------------------------------------------------------------------


@dataclass
class GraphContribution:
    graph: LocGraph
    aut: GraphAut
    status: str                  # "ok" | "zero:..." | "dropped:..."
    value: dict                  # {t-degree: Fraction}
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _convolve(a: dict, b: dict) -> dict:
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            k = da + db
            out[k] = out.get(k, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def graph_contribution(space: WeightedProjSpace, graph: LocGraph,
                       spec: Specialization, degree: int = 0,
                       insertions=(), conv: Conventions = DEFAULT_CONVENTIONS,
                       aut: Optional[GraphAut] = None) -> GraphContribution:
    aut = aut or graph_aut(graph)
    try:
        an = _analyze(space, graph, degree)
    except NoSuchCover as ex:
        return GraphContribution(graph, aut, "dropped:no-cover", {}, str(ex))
    except UnbalancedSector as ex:
        return GraphContribution(graph, aut, "dropped:unbalanced-sector", {},
                                 str(ex))

    p = spec.p
    num_forms = list(an.o_plus) + list(an.t_minus)
    den_forms = list(an.t_plus) + list(an.o_minus)
    for idx, (a, b, d) in enumerate(graph.edges):
        tp, tm, op, om = _edge_forms(space, an.covers[idx], graph.labels[a],
                                     graph.labels[b], degree)
        num_forms += op + tm
        den_forms += tp + om

    num = Fraction(1)
    den = Fraction(1)
    deg_t = 0
    zero_num = []
    zero_den = []
    for f in num_forms:
        v = specialize_linform(f, p)
        deg_t += 1
        if v == 0:
            zero_num.append(f)
        else:
            num *= v
    for f in den_forms:
        v = specialize_linform(f, p)
        deg_t -= 1
        if v == 0:
            zero_den.append(f)
        else:
            den *= v

    # Weights that specialize to zero need care.  A *proportional*
    # numerator/denominator pair cancels exactly -- before
    # specialization -- to the ratio of their scales.  After that
    # pairing, approach the substitution line inside a generic plane:
    # every leftover vanishing form contributes one power of the plane
    # coordinate, so a strict excess of numerator zeros forces the limit
    # to zero regardless of the plane, while equal counts (a
    # direction-dependent ratio) or excess denominator zeros (a pole
    # that only cancels against other graphs) leave this graph with no
    # well-defined value and must be refused.  Returning zero in those
    # last two cases would silently corrupt the sum.
    obstruction_zero = ""
    if zero_num or zero_den:
        groups: dict = {}
        for f in zero_num:
            ray, scale = _ray(f)
            groups.setdefault(ray, ([], []))[0].append(scale)
        for f in zero_den:
            ray, scale = _ray(f)
            groups.setdefault(ray, ([], []))[1].append(scale)
        leftover_num = leftover_den = 0
        for scales_num, scales_den in groups.values():
            scales_num.sort()
            scales_den.sort()
            for lam_n, lam_d in zip(scales_num, scales_den):
                num *= lam_n
                den *= lam_d
            leftover_num += max(0, len(scales_num) - len(scales_den))
            leftover_den += max(0, len(scales_den) - len(scales_num))
        if leftover_num > leftover_den:
            obstruction_zero = (
                f"numerator zeros exceed denominator zeros "
                f"({leftover_num} > {leftover_den})")
        elif leftover_den:
            raise SpecializationDegenerate(
                f"{leftover_den} denominator zero(s) against "
                f"{leftover_num} numerator zero(s): no well-defined limit "
                "for this graph alone")

    comp_sigs = []
    for comp in an.components:
        flag_sig = tuple((f.r, specialize_linform(f.omega, p), f.monodromy)
                         for f in comp.flags)
        if any(om == 0 for (_, om, _) in flag_sig):
            raise SpecializationDegenerate("component flag weight vanished")
        numer_sig = tuple((chi, specialize_linform(form, p))
                          for (chi, form) in comp.numer)
        denom_sig = tuple((chi, specialize_linform(form, p))
                          for (chi, form) in comp.denom)
        if any(v == 0 for (_, v) in denom_sig):
            raise SpecializationDegenerate(
                "twisted obstruction weight vanished on a component")
        comp_sigs.append((comp, flag_sig, numer_sig, denom_sig))

    if obstruction_zero:
        return GraphContribution(graph, aut, "zero:obstruction", {},
                                 obstruction_zero)

    value = {deg_t: num / den}

    for comp, flag_sig, numer_sig, denom_sig in comp_sigs:
        factor = dict(_component_factor(comp.w, flag_sig, comp.n_marks,
                                        numer_sig, denom_sig, conv))
        if not factor:
            return GraphContribution(graph, aut, "zero:component", {},
                                     f"component at vertex {comp.vertex} integrates to 0")
        value = _convolve(value, factor)

    for (w, r) in an.stacky_nodes:
        value = {k: v * Fraction(w, r) ** conv.node_measure_exp
                 for k, v in value.items()}

    if insertions:
        for v in range(graph.n_vertices):
            for mark in graph.marks[v]:
                k = insertions[mark - 1]
                if k:
                    lift = specialize_linform(
                        hyperplane_lift(space, graph.labels[v]), p)
                    value = _convolve(value, {k: lift ** k})

    value = {k: v / aut.total for k, v in value.items()}
    return GraphContribution(graph, aut, "ok", value)


def contribution_trace(space: WeightedProjSpace, graph: LocGraph,
                       spec: Specialization, degree: int = 0) -> dict:
    """Factor-by-factor breakdown of one graph for diagnostics."""
    an = _analyze(space, graph, degree)
    num, den = [], []
    for idx, (a, b, d) in enumerate(graph.edges):
        tp, tm, op, om = _edge_forms(space, an.covers[idx], graph.labels[a],
                                     graph.labels[b], degree)
        num += [f"edge{idx}:obs:{f}" for f in op]
        num += [f"edge{idx}:tan-h1:{f}" for f in tm]
        den += [f"edge{idx}:tan:{f}" for f in tp]
        den += [f"edge{idx}:obs-h1:{f}" for f in om]
    num += [f"vertex:obs:{f}" for f in an.o_plus]
    num += [f"vertex:tan-removed:{f}" for f in an.t_minus]
    den += [f"vertex:tan:{f}" for f in an.t_plus]
    den += [f"vertex:obs-removed:{f}" for f in an.o_minus]
    return {
        "edges": [list(e) for e in graph.edges],
        "labels": list(graph.labels),
        "numerator": num,
        "denominator": den,
        "components": [{"vertex": c.vertex, "isotropy": c.w,
                        "flags": [[f.r, f.monodromy] for f in c.flags],
                        "marks": c.n_marks,
                        "twisted_tangent": [chi for chi, _ in c.numer],
                        "twisted_obstruction": [chi for chi, _ in c.denom]}
                       for c in an.components],
    }


# ---------------------------------------------------------------------------
# The sum over graphs
# ---------------------------------------------------------------------------


@dataclass
class InvariantResult:
    invariant: Fraction
    buckets: dict                # {t-degree: Fraction}, zeros removed
    n_graphs: int
    statuses: Counter
    spec: Specialization
    conventions: Conventions
    contributions: Optional[list] = None


def compute_invariant(space: WeightedProjSpace, beta, degree: int = 0,
                      insertions=(), spec: Optional[Specialization] = None,
                      conv: Conventions = DEFAULT_CONVENTIONS,
                      keep_contributions: bool = False) -> InvariantResult:
    """Sum the localization contributions for curve class ``beta``.

    ``degree`` is the hypersurface degree (0 = no bundle, i.e. invariants
    of the ambient space itself).  ``insertions`` lists one hyperplane
    power per marking.  Without an explicit specialization the chain
    substitution of the target is used.
    """
    if spec is None:
        if degree <= 0:
            raise ValueError("an explicit specialization is required "
                             "when no bundle is given")
        chains = find_chain_structures(space, degree)
        if not chains:
            raise ValueError("target admits no chain structure; pass a "
                             "specialization explicitly")
        spec = chain_specialization(chains[0])
    if not spec.is_nondegenerate(space):
        raise SpecializationDegenerate(
            f"substitution {spec.p} is degenerate for {space}")

    insertions = tuple(int(k) for k in insertions)
    try:
        graphs = enumerate_graphs(space, beta, len(insertions))
    except DegreeNotRepresentable:
        graphs = []

    buckets: dict = {}
    statuses: Counter = Counter()
    kept = [] if keep_contributions else None
    for g in graphs:
        c = graph_contribution(space, g, spec, degree, insertions, conv)
        statuses[c.status] += 1
        for k, v in c.value.items():
            buckets[k] = buckets.get(k, Fraction(0)) + v
        if kept is not None:
            kept.append(c)

    buckets = {k: v for k, v in buckets.items() if v}
    negative = {k: v for k, v in buckets.items() if k < 0}
    if negative:
        raise NotPolynomial(
            f"negative powers survive the graph sum: {negative}")
    return InvariantResult(buckets.get(0, Fraction(0)), buckets, len(graphs),
                           statuses, spec, conv, kept)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def uniform_marks_invariant(space: WeightedProjSpace, beta, degree: int,
                            power: int, n_marks: int,
                            spec: Optional[Specialization] = None,
                            conv: Conventions = DEFAULT_CONVENTIONS
                            ) -> InvariantResult:
    """compute_invariant for n identical insertions, summed by orbits.

    When every marking carries the same hyperplane power, a marked tree's
    contribution depends only on the per-vertex mark counts, so the sum
    over the n!/prod(j_v!) distinguishable placements collapses to one
    representative per count vector (orbit-stabilizer: summing raw
    contributions over all placements and dividing once by the bare
    automorphism order equals the sum over marked isomorphism classes).
    This turns the d=3 plane-curve check from millions of graphs into a
    few thousand.
    """
    if spec is None:
        if degree <= 0:
            raise ValueError("an explicit specialization is required "
                             "when no bundle is given")
        chains = find_chain_structures(space, degree)
        if not chains:
            raise ValueError("target admits no chain structure; pass a "
                             "specialization explicitly")
        spec = chain_specialization(chains[0])
    if not spec.is_nondegenerate(space):
        raise SpecializationDegenerate(
            f"substitution {spec.p} is degenerate for {space}")

    try:
        bare = enumerate_graphs(space, beta, 0)
    except DegreeNotRepresentable:
        bare = []

    insertions = (power,) * n_marks
    buckets: dict = {}
    statuses: Counter = Counter()
    n_fact = factorial(n_marks)
    for g in bare:
        aut_bare = graph_aut(g)
        for js in _compositions(n_marks, g.n_vertices):
            marks = []
            nxt = 1
            for j in js:
                marks.append(tuple(range(nxt, nxt + j)))
                nxt += j
            marked = LocGraph(g.labels, g.edges, tuple(marks))
            aut_m = graph_aut(marked)
            c = graph_contribution(space, marked, spec, degree, insertions,
                                   conv, aut=aut_m)
            statuses[c.status] += 1
            if not c.value:
                continue
            ways = n_fact
            for j in js:
                ways //= factorial(j)
            coeff = Fraction(ways * aut_m.total, aut_bare.total)
            for k, v in c.value.items():
                buckets[k] = buckets.get(k, Fraction(0)) + coeff * v

    buckets = {k: v for k, v in buckets.items() if v}
    negative = {k: v for k, v in buckets.items() if k < 0}
    if negative:
        raise NotPolynomial(
            f"negative powers survive the graph sum: {negative}")
    return InvariantResult(buckets.get(0, Fraction(0)), buckets, len(bare),
                           statuses, spec, conv, None)
