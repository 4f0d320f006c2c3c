"""End-to-end acceptance checks for the worked examples and the randomized
property suites.

Each test prints exactly one visible PASS/FAIL line with its elapsed time
against a wall-clock budget, so a full run doubles as a scorecard.  All
comparisons are exact (reduced-Groebner equality or boolean identity);
random suites are seeded and report the first few counterexamples on
failure.
"""

import random
import time

from paramkit.criteria import (
    cm_probe,
    is_sop,
    lift_matrix,
    map1_lim_test,
    map2_stage_test,
    map5_test,
    one_dim_theorems,
    random_element,
    random_sop,
)
from paramkit.groebner import Ideal, ideal_equal, ideal_member
from paramkit.idealops import ElementSequence, as_sequence, colon
from paramkit.koszul import (
    CoeffMatrix,
    chain_map_check,
    detcor_check,
    exterior_power_map,
    koszul_complex,
    matrices_equal_in_S,
)
from paramkit.limitclosure import limit_closure, monomial_conjecture_check
from paramkit.corpus import list_scenarios, load_scenario
from paramkit.parser import make_ring, parse_poly, parse_poly_list
from paramkit.polyring import Polynomial, render_poly

BUDGETS = {1: 5, 2: 10, 3: 5, 4: 60, 5: 120, 6: 120, 7: 60, 8: 120, 9: 30}


def _finish(capsys, idx, label, start, failures):
    elapsed = time.perf_counter() - start
    budget = BUDGETS[idx]
    ok = not failures and elapsed < budget
    with capsys.disabled():
        print(f"[acceptance {idx}/9] {'PASS' if ok else 'FAIL'} {label} "
              f"({elapsed:.2f}s, budget {budget}s)")
    assert not failures, f"{len(failures)} failures, first: {failures[:3]}"
    assert elapsed < budget, f"{elapsed:.2f}s over the {budget}s budget"


def S(ring, text):
    return as_sequence(parse_poly_list(text, ring))


def I(ring, text):
    return S(ring, text).as_ideal()


def test_1_char2_colon_example(capsys):
    start = time.perf_counter()
    failures = []
    R = make_ring(2, ["x", "u"], ["(x+u)^3*u^3", "x*(x+u)^2*u^2"])
    if not ideal_equal(colon(I(R, "x^2"), parse_poly("x", R)),
                       I(R, "x, u^4")):
        failures.append("colon of the square by x is not (x, u^4)")
    if map5_test(S(R, "x"), S(R, "x^2")) is not False:
        failures.append("direct comparison map should not be injective")
    if not is_sop(S(R, "x^2")):
        failures.append("x^2 should be a parameter")
    _finish(capsys, 1, "char-2 colon/injectivity example", start, failures)


def test_2_axis_planes_example(capsys):
    start = time.perf_counter()
    failures = []
    for char in (0, 2):
        Q = make_ring(char, ["a", "b", "c", "d"],
                      ["a*c", "a*d", "b*c", "b*d"])
        tag = f"char {char}"
        x, y = S(Q, "a+c, b+d"), S(Q, "a^2, b^2")
        res = limit_closure(x)
        if not (res.stabilized_at <= 3
                and ideal_equal(res.closure, I(Q, "a, b, c, d"))):
            failures.append(f"{tag}: closure of the sop is not the maximal ideal")
        res2 = limit_closure(y)
        if not ideal_equal(res2.closure, I(Q, "a^2, b^2, c, d")):
            failures.append(f"{tag}: closure of the squares is wrong")
        A = lift_matrix(y, x)
        if render_poly(A.det()) != "a*b":
            failures.append(f"{tag}: lift determinant is {render_poly(A.det())}")
        if map1_lim_test(x, y, A) is not True:
            failures.append(f"{tag}: limit-stage map should be injective")
        if is_sop(y):
            failures.append(f"{tag}: the squares are not a sop here")
    _finish(capsys, 2, "two-axis-planes example (char 0 and 2)", start, failures)


def test_3_embedded_line_example(capsys):
    start = time.perf_counter()
    failures = []
    T = make_ring(0, ["x", "z"], ["x^2*z", "z^2"])
    if not ideal_equal(colon(I(T, "x^2"), parse_poly("x", T)), I(T, "x")):
        failures.append("colon of the square by x is not (x)")
    if map5_test(S(T, "x"), S(T, "x^2")) is not True:
        failures.append("direct comparison map should be injective")
    rep = cm_probe(T, trials=6, seed=0)
    if rep.verdict != "NotCM":
        failures.append("probe should find a non-Cohen-Macaulay witness")
    else:
        w = rep.witness
        closure = limit_closure(rep.sequence).closure
        if not closure.contains(w):
            failures.append("witness must lie in the limit closure")
        if rep.sequence.as_ideal().contains(w):
            failures.append("witness must lie outside the plain ideal")
    _finish(capsys, 3, "embedded-line example with non-CM witness", start,
            failures)


_DETCOR_RINGS = [
    lambda: make_ring(0, ["x", "y"], []),
    lambda: make_ring(0, ["x", "y", "z"], ["x*y"]),
    lambda: make_ring(5, ["x", "y", "z"], ["x^2*y - z^3"]),
    lambda: make_ring(5, ["a", "b", "c", "d"], ["a*c", "b*d"]),
]


def _syzygy_rows(ring, x, rng):
    """Random multiples of the Koszul relations x_j e_i - x_i e_j."""
    d = len(x)
    rows = [[ring.zero() for _ in range(d)] for _ in range(d)]
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    for _ in range(rng.randint(1, 3)):
        r = rng.randrange(d)
        i, j = rng.choice(pairs)
        t = random_element(ring, rng, degree=rng.choice([0, 1]))
        rows[r][i] = rows[r][i] + t * x[j]
        rows[r][j] = rows[r][j] - t * x[i]
    return rows


def test_4_determinant_congruence_suite(capsys):
    start = time.perf_counter()
    failures = []
    rng = random.Random(4)
    for case in range(200):
        ring = _DETCOR_RINGS[case % len(_DETCOR_RINGS)]()
        # the 4-variable ring only gets d = 2: the bracket-power bases for
        # cubes of three-term products grow too fast there for a quick suite
        d = 3 if ring.nvars <= 3 and case % 3 == 0 else 2
        deg_pool = [1, 1, 2] if ring.nvars == 2 and d == 2 else [1]
        xs = []
        while len(xs) < d:
            e = random_element(ring, rng, degree=rng.choice(deg_pool))
            if e:
                xs.append(e)
        x = ElementSequence(ring, xs)
        A = CoeffMatrix(ring, [[random_element(ring, rng, degree=1)
                                for _ in range(d)] for _ in range(d)])
        y = as_sequence(A.apply(x))
        syz = _syzygy_rows(ring, x, rng)
        B = CoeffMatrix(ring, [[A[i, j] + syz[i][j] for j in range(d)]
                               for i in range(d)])
        if not detcor_check(y, A, B, x):
            failures.append(f"case {case}: determinant congruence failed")
    _finish(capsys, 4, "determinant congruence on 200 random lift pairs",
            start, failures)


_ONE_DIM_RINGS = [
    (0, ["a", "b"], ["a*b"]),
    (0, ["a", "b"], ["a^2"]),
    (0, ["a", "b"], ["a^2*b"]),
    (0, ["a", "b"], ["a*b", "b^2"]),
    (0, ["a", "b"], ["a^2 - b^2"]),
    (0, ["a", "b"], ["a^2 - a*b"]),
    (0, ["x", "z"], ["x^2*z", "z^2"]),
    (2, ["x", "z"], ["x^2*z", "z^2"]),
    (0, ["x", "y", "z"], ["x*y", "x*z", "y*z"]),
    (0, ["x", "y", "z"], ["x*y", "x*z", "y^2"]),
    (0, ["x", "y", "z"], ["x*y", "z^2"]),
    (5, ["a", "b"], ["a*b"]),
]


def test_5_one_dimensional_theorem_suite(capsys):
    start = time.perf_counter()
    failures = []
    rng = random.Random(5)
    zero_tested = 0
    for char, names, quots in _ONE_DIM_RINGS:
        ring = make_ring(char, names, quots)
        label = f"char {char} {'/'.join(quots)}"
        zero = Ideal(ring, [])
        pairs = 0
        while pairs < 50:
            x = random_element(ring, rng, degree=1)
            if not x or not is_sop(ElementSequence(ring, [x])):
                continue
            u = random_element(ring, rng, degree=rng.choice([1, 1, 2]))
            if not zero.normal_form(u):
                continue
            pairs += 1
            rep = one_dim_theorems(x, u)
            where = f"{label}, x={render_poly(x)}, u={render_poly(u)}"
            if rep.map5_via_u and not rep.y_is_sop:
                failures.append(f"{where}: injective but y not a parameter")
            if rep.map5_via_u and not rep.map5_via_x:
                failures.append(f"{where}: u-side injective but x-side not")
            if rep.u_is_parameter and rep.map5_via_u != rep.map5_via_x:
                failures.append(f"{where}: symmetry fails for parameter u")
            if rep.map1_injective != rep.y_is_sop:
                failures.append(f"{where}: limit-map test disagrees with sop")
            if rep.length_identity is None:
                failures.append(f"{where}: length identity not computed")
            elif rep.length_identity[0] != rep.length_identity[1]:
                failures.append(f"{where}: lengths {rep.length_identity}")
            zero_tested += 1
    if zero_tested < 12 * 50:
        failures.append(f"only {zero_tested} pairs tested")
    _finish(capsys, 5, "one-dimensional theorems on 12 rings x 50 pairs",
            start, failures)


_SOP_SUITE_RINGS = [
    (0, ["a", "b"], ["a*b"]),
    (0, ["a", "b"], ["a^2"]),
    (0, ["x", "z"], ["x^2*z", "z^2"]),
    (0, ["x", "y", "z"], ["x*y", "x*z", "y*z"]),
    (0, ["x", "z"], []),
    (2, ["a", "b", "c", "d"], ["a*c", "a*d", "b*c", "b*d"]),
]


def _random_invertible(ring, d, rng):
    while True:
        if ring.char:
            ents = [[rng.randrange(ring.char) for _ in range(d)]
                    for _ in range(d)]
        else:
            ents = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        M = CoeffMatrix(ring, [[c * ring.one() for c in row]
                               for row in ents])
        if M.det():
            return M


def test_6_sop_implies_injectivity_suite(capsys):
    start = time.perf_counter()
    failures = []
    rng = random.Random(6)
    for case in range(100):
        char, names, quots = _SOP_SUITE_RINGS[case % len(_SOP_SUITE_RINGS)]
        ring = make_ring(char, names, quots)
        x = random_sop(ring, rng)
        kind = case % 3
        if kind == 0:
            y = as_sequence(_random_invertible(ring, len(x), rng).apply(x))
        elif kind == 1:
            y = x.powers(2)
        else:
            y = as_sequence(
                _random_invertible(ring, len(x), rng).apply(x.powers(2)))
        where = f"case {case} ({'/'.join(quots) or 'free'}, kind {kind})"
        if not is_sop(y):
            failures.append(f"{where}: constructed y is not a sop")
            continue
        if map1_lim_test(x, y) is not True:
            failures.append(f"{where}: limit-stage map not injective")
        rows = map2_stage_test(x, y, stages=3)
        if not all(inj for _, _, inj in rows):
            failures.append(f"{where}: stage results {rows}")
    _finish(capsys, 6, "sop-inside-sop injectivity on 100 instances", start,
            failures)


def test_7_monomial_conjecture_suite(capsys):
    start = time.perf_counter()
    failures = []
    rng = random.Random(7)
    rings = [make_ring(c, n, q) for c, n, q in _ONE_DIM_RINGS[:8]]
    rings += [make_ring(c, n, q) for c, n, q in _SOP_SUITE_RINGS[3:]]
    for ring in rings:
        seen = set()
        for _ in range(5):
            x = random_sop(ring, rng)
            key = tuple(render_poly(e) for e in x)
            if key in seen:
                continue
            seen.add(key)
            rep = monomial_conjecture_check(x, t_max=16)
            if not rep.holds:
                failures.append(
                    f"{ring!r}, x={key}: violated at t={rep.violated_at}")
    _finish(capsys, 7, "power-product exclusion for sampled sops, t <= 16",
            start, failures)


_ORACLE_RINGS = [
    lambda: make_ring(0, ["x", "y"], []),
    lambda: make_ring(0, ["x", "y", "z"], ["x*y"]),
    lambda: make_ring(5, ["x", "y", "z"], []),
    lambda: make_ring(5, ["a", "b", "c", "d"], ["a*c", "b*d"]),
]


def test_8_membership_oracle_agreement(capsys):
    from oracles import truncated_member

    start = time.perf_counter()
    failures = []
    rng = random.Random(8)
    for case in range(500):
        ring = _ORACLE_RINGS[case % len(_ORACLE_RINGS)]()
        ngens = rng.randint(1, 3)
        gens = []
        while len(gens) < ngens:
            g = random_element(ring, rng, degree=rng.randint(1, 4))
            if g:
                gens.append(g)
        ideal = Ideal(ring, gens)
        if case % 2 == 0:
            f = random_element(ring, rng, degree=rng.randint(1, 4))
            lib = ideal.contains(f)
            oracle = truncated_member(f, gens, slack=0)
        else:
            f = ring.zero()
            maxdeg = 0
            for g in gens:
                h = random_element(ring, rng, degree=rng.randint(0, 2) or 1)
                f = f + h * g
                maxdeg = max(maxdeg, h.total_degree() + g.total_degree())
            lib = ideal.contains(f)
            slack = maxdeg - f.total_degree() if f else 0
            oracle = truncated_member(f, gens, slack=slack)
            if lib is not True:
                failures.append(f"case {case}: constructed member rejected")
        if lib != oracle:
            failures.append(
                f"case {case}: library {lib} vs oracle {oracle} "
                f"for f={render_poly(f)}")
    _finish(capsys, 8, "membership vs truncated linear oracle, 500 instances",
            start, failures)


def test_9_koszul_functoriality_suite(capsys):
    start = time.perf_counter()
    failures = []
    for name in list_scenarios():
        sess = load_scenario(name)
        for seq_name, seq in sess.sequences.items():
            kz = koszul_complex(seq)
            d = len(seq)
            for k in range(1, d):
                prod = kz.differential(k) * kz.differential(k + 1)
                if any(prod[i, j]
                       for i in range(prod.nrows) for j in range(prod.ncols)):
                    failures.append(
                        f"{name}.{seq_name}: differential composite nonzero")
            diag = CoeffMatrix(seq.ring,
                               [[seq[i] if i == j else seq.ring.zero()
                                 for j in range(d)] for i in range(d)])
            if d and not chain_map_check(seq, seq.powers(2), diag):
                failures.append(f"{name}.{seq_name}: square lift not a chain map")
            ident = CoeffMatrix.identity(seq.ring, d)
            if d and not chain_map_check(seq, seq, ident):
                failures.append(f"{name}.{seq_name}: identity not a chain map")
    rng = random.Random(9)
    R = make_ring(0, ["x", "y", "z"], [])
    for case in range(100):
        d = 2 if case % 2 else 3
        A = CoeffMatrix(R, [[random_element(R, rng, degree=1)
                             for _ in range(d)] for _ in range(d)])
        B = CoeffMatrix(R, [[random_element(R, rng, degree=1)
                             for _ in range(d)] for _ in range(d)])
        top = exterior_power_map(A, d)
        if not matrices_equal_in_S(top, CoeffMatrix(R, [[A.det()]])):
            failures.append(f"case {case}: top power is not the determinant")
        AB = A * B
        for k in range(d + 1):
            lhs = exterior_power_map(AB, k)
            rhs = exterior_power_map(A, k) * exterior_power_map(B, k)
            if not matrices_equal_in_S(lhs, rhs):
                failures.append(f"case {case}: minor multiplication at k={k}")
    _finish(capsys, 9, "Koszul differentials, chain maps and minors", start,
            failures)
