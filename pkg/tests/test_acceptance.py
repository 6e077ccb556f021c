"""Exit criteria. All arithmetic is exact; the only tolerances are the
wall-clock limits, asserted as stated."""

import io
import random
import time
from fractions import Fraction
from itertools import product

import pytest
import sympy

from helpers import random_unipoly, random_word, sympy_apply_constant_coeff, to_sympy
from smithalg.cli import run
from smithalg.laurent import LaurentElement, RadialVector, embed_u, generators, radial_act, tau
from smithalg.numfield import QQ, EchelonSpan, PolynomialRing, UniPoly
from smithalg.pvcat import (
    CATALOG, abstract_component, bfunction, igusa_closure, load_space, radial_component, u_points,
    u_polynomial, words_up_to,
)
from smithalg.smith import (
    SPresentation, UNormalForm, UPresentation, casimir, f_from_u, is_central, s_normalize, u_from_f,
    u_normalize,
)
from smithalg.weyl import commutator, graded_degree

ALL = ["rank1", "quad2", "quad3", "quad4", "det2", "det3", "sym2", "pfaff4"]
assert sorted(ALL) == sorted(CATALOG)

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def spaces():
    return {name: load_space(name) for name in ALL}


@criterion("1")
def test_grading_identities(spaces):
    start = time.perf_counter()
    for s in spaces.values():
        assert commutator(s.E, s.X) == s.X.scale(s.d0)
        assert commutator(s.E, s.Y) == s.Y.scale(-s.d0)
        assert graded_degree(s.X, s.E) == s.d0
        assert graded_degree(s.Y, s.E) == -s.d0
    assert time.perf_counter() - start < 10


@criterion("2")
def test_commutativity_witness(spaces):
    start = time.perf_counter()
    for s in spaces.values():
        assert commutator(s.X * s.Y, s.Y * s.X).is_zero(), s.name
    assert time.perf_counter() - start < 120


def _oracle_b(space, K):
    syms = sympy.symbols(space.variables)
    delta = to_sympy(space.delta, syms)
    out = []
    for k in range(K + 1):
        image = sympy_apply_constant_coeff(space.delta, syms, sympy.expand(delta ** (k + 1)))
        q = sympy.cancel(image / delta ** k) / space.norm
        num, den = sympy.fraction(q)
        out.append(Fraction(int(num), int(den)))
    return out


@criterion("3")
def test_bfunction_proportionality(spaces):
    start = time.perf_counter()
    tables = {}
    for s in spaces.values():
        b = bfunction(s, s.d0 + 3)
        assert b[0] == 1
        assert len(b) == s.d0 + 4
        tables[s.name] = b
    assert time.perf_counter() - start < 180
    assert tables["rank1"] == [k + 1 for k in range(5)]
    # brute-force oracle: symbolic differentiation with sympy
    assert _oracle_b(spaces["quad2"], 4) == [1, 4, 9, 16, 25] == tables["quad2"][:5]
    assert _oracle_b(spaces["det2"], 4) == [1, 3, 6, 10, 15] == tables["det2"][:5]


@criterion("4")
def test_u_extraction(spaces):
    for s in spaces.values():
        u = u_polynomial(s, s.d0 + 3)
        assert u(Fraction(0)) == 0
        assert u.degree() == s.d0
        pts = u_points(s, bfunction(s, s.d0 + 3))
        assert len(pts) > s.d0 + 1
        for t, b in pts[s.d0 + 1:]:
            assert u(Fraction(t)) == b
    assert u_polynomial(spaces["rank1"]) == UniPoly.t()


SMITH_PAIRS = [
    (UniPoly.constant(1), 1),
    (UniPoly((1, 1)), 2),
    (UniPoly((0, 0, 1)), 1),
    (UniPoly((Fraction(1, 2), -3, 0, 2)), 3),
]


def _poly_ring_pair():
    R = PolynomialRing(["z"])
    z = R.gen(0)
    return R, UniPoly((z, 1, z * z), R), 2


@criterion("5")
def test_smith_kernel():
    start = time.perf_counter()
    rng = random.Random(2024)
    pres_list = []
    for f, n in SMITH_PAIRS:
        pres_list.append((SPresentation(QQ, f, n), UPresentation(QQ, u_from_f(f, n), n)))

    # confluence under randomized rule order
    for i in range(200):
        S, U = pres_list[i % len(pres_list)]
        w = random_word(rng, 6)
        assert s_normalize(w, S, rng=rng) == s_normalize(w, S)
        assert u_normalize(w, U, rng=rng) == u_normalize(w, U)

    # associativity through normalization
    for i in range(200):
        S, U = pres_list[i % len(pres_list)]
        w1, w2, w3 = (random_word(rng, 3) for _ in range(3))
        for pres in (S, U):
            a, b, c = (pres.normalize({w: 1}) for w in (w1, w2, w3))
            assert (a * b) * c == a * (b * c)

    # [y, x] = f(e) in U with f = f_from_u(u, n)
    for _ in range(10):
        u = random_unipoly(rng, 3)
        n = rng.randint(1, 3)
        U = UPresentation(QQ, u, n)
        f = f_from_u(u, n)
        assert u_normalize({"yx": 1, "xy": -1}, U) == U.normalize({"e" * i: c for i, c in enumerate(f.coeffs)})

    # Casimir central for five (f, n) pairs, one over QQ[z]
    R, fz, nz = _poly_ring_pair()
    samples = [S for S, _ in pres_list] + [SPresentation(R, fz, nz)]
    assert len(samples) == 5
    for S in samples:
        assert is_central(casimir(S), S)
    assert time.perf_counter() - start < 30


@criterion("6")
@pytest.mark.parametrize("name", ["rank1", "quad2", "det2"])
def test_principal_theorem_witness(spaces, name):
    start = time.perf_counter()
    s = spaces[name]
    words = list(words_up_to(4))
    assert len(words) == 3 + 9 + 27 + 81
    for w in words:
        text = "*".join(w)
        assert radial_component(s, text) == abstract_component(s, text), text
    assert time.perf_counter() - start < 120


def _random_laurent(rng, n):
    return LaurentElement({rng.randint(-3, 3): random_unipoly(rng, 3) for _ in range(rng.randint(1, 3))}, n)


@criterion("7")
def test_tau_relations(spaces):
    start = time.perf_counter()
    for s in spaces.values():
        assert s.X * s.E == (s.E - s.d0) * s.X
    rng = random.Random(77)
    for name in ["rank1", "quad2", "det3"]:
        s = spaces[name]
        gens = generators(s.u_bar, s.d0)
        X, Y = gens["x"], gens["y"]
        for _ in range(100):
            D = _random_laurent(rng, s.d0)
            assert X * D == tau(D) * X
            # DY = Y tau(D) holds on the degree-zero part T_0 = A[e]
            D0 = LaurentElement.of_e(random_unipoly(rng, 4), s.d0)
            assert D0 * Y == Y * tau(D0)
    assert time.perf_counter() - start < 30


@criterion("8")
def test_normal_form_uniqueness(spaces):
    start = time.perf_counter()
    for s in spaces.values():
        U = UPresentation(QQ, s.u_bar, s.d0)
        basis = [("y" * l + "e" * k) for l in range(1, 5) for k in range(9)]
        basis += [("x" * m + "e" * r) for m in range(5) for r in range(9)]
        span = EchelonSpan()
        for word in basis:
            nf = UNormalForm(U, {word: QQ.one})
            image = embed_u(nf)
            vec = {}
            for j in range(21):
                out = radial_act(image, RadialVector.monomial(j), s.d0)
                for power, c in out.terms.items():
                    vec[(j, power)] = c
            assert span.add(vec), (s.name, word)
        assert span.dim == len(basis) == 81
    assert time.perf_counter() - start < 30


@criterion("9")
def test_igusa_contrast(spaces):
    start = time.perf_counter()
    for name in ["rank1", "quad2", "quad3", "det2"]:
        dims = igusa_closure(spaces[name], 3)
        assert dims[2] == 3 and dims[1] == 3, (name, dims)
    dims = igusa_closure(spaces["det3"], 4)
    assert all(a < b for a, b in zip(dims, dims[1:])), dims
    assert time.perf_counter() - start < 300


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue()


@criterion("10a")
def test_cli_determinism():
    for space in ["rank1", "det2"]:
        for fmt in ["text", "json"]:
            assert _run("--format", fmt, "verify", space) == _run("--format", fmt, "verify", space)


@criterion("10b")
def test_cli_exit_codes(tmp_path):
    assert _run("verify", "rank1")[0] == 0
    assert _run("verify", "unknown-space")[0] == 2
    assert _run("radial", "quad2", "--expr", "X**")[0] == 2
    bad = tmp_path / "naive_sym.space"
    bad.write_text("name = naive_sym\nvars = a, b, c\ndelta = a*c - b^2\n")
    assert _run("verify", str(bad))[0] == 1


@criterion("10c")
def test_cli_reducible_custom_input(tmp_path):
    path = tmp_path / "x2y.space"
    path.write_text("name = x2y\nvars = x, y\ndelta = x^2*y\n")
    code, out = _run("--format", "json", "verify", str(path))
    import json
    checks = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
    assert code == 1
    assert checks["b_proportionality"] == "fail"
