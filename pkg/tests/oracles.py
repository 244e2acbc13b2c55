"""Brute-force reference implementations used to check the real code paths.

Nothing here touches the dataset indexes or the query evaluator.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter

from samskit.rdf_model import XSD_DATE, XSD_INTEGER, BlankNode, Iri, Literal, Triple, compare_terms, Ordering
from samskit.sparql import FilterExpr, GroupPattern, SelectQuery, UnionPattern
from samskit.store import TriplePattern, Variable
from samskit.vocab import dc, foaf, omdoc, semvm, vm

EX = "http://ex.org/"

SUBJECTS = [Iri(EX + n) for n in ("a", "b", "c", "d")] + [BlankNode("x1")]
PREDICATES = [Iri(EX + "p"), Iri(EX + "q"), Iri(EX + "r")]
LITERALS = [
    Literal("1", XSD_INTEGER), Literal("7", XSD_INTEGER),
    Literal("2009-01-01", XSD_DATE), Literal("2009-06-01", XSD_DATE),
    Literal("x"), Literal("y"), Literal('tab\there "q"\\\n'),
]
OBJECTS = SUBJECTS + LITERALS
VAR_NAMES = ["a", "b", "c", "p"]
OPS = ["<", ">", "<=", ">=", "=", "!="]


def random_dataset(rng: random.Random, max_triples: int = 50) -> list[Triple]:
    n = rng.randint(0, max_triples)
    return [Triple(rng.choice(SUBJECTS), rng.choice(PREDICATES), rng.choice(OBJECTS)) for _ in range(n)]


def _pos(rng, pool, var_prob=0.55):
    if rng.random() < var_prob:
        return Variable(rng.choice(VAR_NAMES[:3]))
    return rng.choice(pool)


def random_pattern(rng: random.Random) -> TriplePattern:
    pred = Variable("p") if rng.random() < 0.2 else rng.choice(PREDICATES)
    return TriplePattern(_pos(rng, SUBJECTS), pred, _pos(rng, OBJECTS))


def random_query(rng: random.Random) -> SelectQuery:
    """At most 4 triple patterns, at most one UNION and at most one FILTER."""
    n_patterns = rng.randint(1, 4)
    use_union = n_patterns >= 2 and rng.random() < 0.4
    elements = []
    if use_union:
        n_left = 1 if n_patterns == 2 else rng.randint(1, n_patterns - 2)
        n_right = 1
        n_main = n_patterns - n_left - n_right
        main = [random_pattern(rng) for _ in range(n_main)]
        left = GroupPattern(tuple(random_pattern(rng) for _ in range(n_left)))
        right = GroupPattern(tuple(random_pattern(rng) for _ in range(n_right)))
        elements = main[:]
        elements.insert(rng.randint(0, len(main)), UnionPattern(left, right))
    else:
        elements = [random_pattern(rng) for _ in range(n_patterns)]
    group = GroupPattern(tuple(elements))
    variables = sorted(group.variables())
    if not variables:
        # every pattern was ground; swap one for something that can be projected
        elements = [TriplePattern(Variable("a"), PREDICATES[0], Variable("b")) if isinstance(e, TriplePattern) else e
                    for e in elements]
        if not any(isinstance(e, TriplePattern) for e in elements):
            elements.append(TriplePattern(Variable("a"), PREDICATES[0], Variable("b")))
        group = GroupPattern(tuple(elements))
        variables = sorted(group.variables())
    if rng.random() < 0.5:
        lhs = Variable(rng.choice(variables))
        rhs = Variable(rng.choice(variables)) if rng.random() < 0.3 else rng.choice(OBJECTS)
        if rng.random() < 0.5:
            lhs, rhs = rhs, lhs
        group = GroupPattern(group.elements + (FilterExpr(rng.choice(OPS), lhs, rhs),))
    projection = tuple(rng.sample(variables, rng.randint(1, len(variables))))
    return SelectQuery({}, projection, group)


def brute_match(triples, pattern) -> list[dict]:
    """Filter every triple by unification, no indexes."""
    out = []
    for t in set(triples):
        b = {}
        ok = True
        for want, have in zip(pattern, t):
            if isinstance(want, Variable):
                if want.name in b and b[want.name] != have:
                    ok = False
                    break
                b[want.name] = have
            elif want != have:
                ok = False
                break
        if ok:
            out.append(b)
    return out


def _holds(op, lhs, rhs) -> bool:
    if op == "=":
        return lhs == rhs
    if op == "!=":
        return lhs != rhs
    order = compare_terms(lhs, rhs)
    return {
        "<": order is Ordering.LESS,
        ">": order is Ordering.GREATER,
        "<=": order in (Ordering.LESS, Ordering.EQUAL),
        ">=": order in (Ordering.GREATER, Ordering.EQUAL),
    }[op]


def _filter_true(f: FilterExpr, assignment: dict) -> bool:
    vals = []
    for side in (f.lhs, f.rhs):
        if isinstance(side, Variable):
            if side.name not in assignment:
                return False
            vals.append(assignment[side.name])
        else:
            vals.append(side)
    return _holds(f.op, *vals)


def enumerate_solutions(q: SelectQuery, triples) -> Counter:
    """Solution bag of *q* by trying every assignment of every variable.

    Handles the shapes produced by :func:`random_query`: a flat group of
    triple patterns, at most one union of flat groups, filters anywhere.
    """
    facts = set(triples)
    universe = sorted({term for t in facts for term in t}, key=repr)
    main, filters, branches = [], [], [[]]
    for el in q.pattern.elements:
        if isinstance(el, TriplePattern):
            main.append(el)
        elif isinstance(el, FilterExpr):
            filters.append(el)
        elif isinstance(el, UnionPattern):
            branches = [list(el.left.elements), list(el.right.elements)]
        else:
            raise ValueError(f"unsupported element {el!r}")
    bag = Counter()
    for branch in branches:
        patterns = main + branch
        names = sorted({v.name for p in patterns for v in p if isinstance(v, Variable)})
        for values in itertools.product(universe, repeat=len(names)):
            assignment = dict(zip(names, values))
            if not all(tuple(assignment[t.name] if isinstance(t, Variable) else t for t in p) in facts
                       for p in patterns):
                continue
            if not all(_filter_true(f, assignment) for f in filters):
                continue
            bag[frozenset((v, assignment[v]) for v in q.projection if v in assignment)] += 1
    return bag


def as_bag(solutions) -> Counter:
    return Counter(frozenset(b.items()) for b in solutions)


def reachable(edges, root) -> set:
    """Closure of *root* under *edges* (pairs a -> b) by iterating to a fixpoint."""
    nodes = {root} | {x for e in edges for x in e}
    reach = {n: {n} for n in nodes}
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            new = reach[b] - reach[a]
            if new:
                reach[a] |= new
                changed = True
    return reach[root]


def random_dependency_graph(rng: random.Random, max_edges: int = 100):
    """Random refines / occursInDefinitionOf edges over a small node set, cycles allowed."""
    n_nodes = rng.randint(2, 40)
    nodes = [Iri(f"{EX}o{i}") for i in range(n_nodes)]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        kind = rng.choice(("refines", "defines"))
        edges.append((kind, rng.choice(nodes), rng.choice(nodes)))
    return nodes, edges


def random_collection(rng: random.Random) -> list[Triple]:
    """Documents, parts, people, dates and dependency links in the collection vocabulary."""
    n_docs = rng.randint(1, 6)
    docs = [Iri(f"{EX}doc{i}") for i in range(n_docs)]
    people = [Iri(f"{EX}person{i}") for i in range(rng.randint(1, 4))]
    objects = []
    out = []
    for d in docs:
        for j in range(rng.randint(0, 3)):
            o = Iri(f"{d.value}#o{j}")
            objects.append(o)
            out.append(Triple(d, omdoc.hasPart, o))
        for person in rng.sample(people, rng.randint(0, min(2, len(people)))):
            out.append(Triple(d, vm.responsible, person))
        if rng.random() < 0.8:
            out.append(Triple(d, dc.date, Literal(f"{rng.randint(2007, 2011)}-{rng.randint(1, 12):02d}-15", XSD_DATE)))
    for person in people:
        for k in range(rng.choice((0, 1, 1, 2))):
            out.append(Triple(person, foaf.name, Literal(f"{person.value[-1]}n{k}")))
    if objects:
        for _ in range(rng.randint(0, 8)):
            pred = rng.choice((semvm.refines, omdoc.occursInDefinitionOf))
            out.append(Triple(rng.choice(objects), pred, rng.choice(objects)))
    return out
