"""Seeded property suites behind ``henselkit check``.

Every suite draws from its own ``random.Random`` seeded with ``"<seed>:<suite>"``, so a suite
reports the same trials whether it runs alone or as part of ``all``.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any

from henselkit.diffpoly.factors import select_vanishing_factor
from henselkit.diffpoly.poly import DiffPoly, jet_of
from henselkit.expr.evaluate import parse_diffpoly, parse_series
from henselkit.lib.config import RunConfig
from henselkit.lib.errors import HenselkitError
from henselkit.lib.output import describe_unexpected
from henselkit.series.codec import format_series
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    angular_component,
    build_element,
    derive,
    embed,
    field_of,
    generator,
    residue,
    residue_section,
    valuation,
    vanishes,
)
from henselkit.series.values import ValueVec
from henselkit.solver.dh import DHProblem, check_dl, closeness, iterate_stages, solve_dh
from henselkit.solver.hensel import hensel_lift_system
from henselkit.taylor.morphism import (
    apply_morphism,
    check_valued_taylor,
    taylor_series,
    twisted_taylor,
)
from henselkit.taylor.prolong import prolong, shift
from henselkit.weil.bounds import continuity_bound, is_separated_sample, separated_lower_bound
from henselkit.weil.descent import (
    ExtensionPresentation,
    descend,
    descended_grid,
    extension_grid,
    point_key,
    tau,
    tau_inverse,
    verify_descent_derivation,
)
from henselkit.weil.extensions import gaussian_rationals, linear_span_basis, ramified_quadratic

_LOG = logging.getLogger(__name__)

TAYLOR_TERMS = 10
HOMOMORPHISM_TERMS = 5


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def run(self, label: str, check: Callable[[], bool]) -> None:
        """One trial; a false result or any exception is a failure."""
        self.trials += 1
        try:
            passed = check()
        except Exception as err:
            self.record(label, err)
            return
        if not passed:
            self.failures.append(label)

    def record(self, label: str, err: Exception) -> None:
        if isinstance(err, HenselkitError):
            self.failures.append(f"{label}: {err.describe()}")
            return
        _LOG.debug("trial %s crashed", label, exc_info=err)
        self.failures.append(f"{label}: InternalError: {describe_unexpected(err)}")

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "trials": self.trials,
            "failed": len(self.failures),
            "failures": self.failures[:20],
        }


# --- random data ---------------------------------------------------------------


def random_rational(rng: random.Random, height: int = 10) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_series(rng: random.Random, tower_field: TowerDescriptor, terms: int = 4) -> Coefficient:
    """An exact element with a few terms; coefficients recurse down the tower."""
    if tower_field.height == 0:
        return random_rational(rng)
    below = tower_field.below()
    acc: dict[Fraction, Coefficient] = {}
    for _ in range(rng.randint(1, terms)):
        exponent = Fraction(rng.randint(-2, 6))
        acc[exponent] = random_series(rng, below, max(terms - 1, 1))
    return build_element(tower_field, acc, None)


def random_nonzero_series(
    rng: random.Random, tower_field: TowerDescriptor, terms: int = 4
) -> Coefficient:
    while True:
        x = random_series(rng, tower_field, terms)
        if not vanishes(x):
            return x


def random_diffpoly(
    rng: random.Random,
    tower_field: TowerDescriptor,
    num_vars: int,
    max_order: int = 3,
    max_degree: int = 3,
) -> DiffPoly:
    """Up to five monomials of degree <= max_degree in x_i^(k), k <= max_order."""
    poly = DiffPoly.constant(tower_field, num_vars, random_rational(rng))
    for _ in range(rng.randint(1, 5)):
        monomial = DiffPoly.constant(tower_field, num_vars, random_series(rng, tower_field, 2))
        for _ in range(rng.randint(1, max_degree)):
            index = rng.randrange(num_vars)
            monomial = monomial * DiffPoly.variable(
                tower_field, num_vars, index, rng.randint(0, max_order)
            )
        poly = poly + monomial
    return poly


def random_problem(rng: random.Random, max_order: int = 3) -> DHProblem:
    """(f, c) over Q with f(c) = 0 and s_f(c) != 0; γ is left trivial."""
    q = TowerDescriptor()
    n = rng.randint(0, max_order)
    jet = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n + 1))
    top = DiffPoly.variable(q, 1, 0, n)
    f = top * rng.choice([-3, -2, -1, 1, 2, 3])
    for _ in range(rng.randint(0, 3)):
        term = DiffPoly.constant(q, 1, rng.randint(-10, 10))
        for _ in range(rng.randint(1, 3)):
            term = term * DiffPoly.variable(q, 1, 0, rng.randint(0, n))
        f = f + term
    f = f - f.alg_eval([list(jet)])
    if not f.involves(0) or f.separant().alg_eval([list(jet)]) == 0:
        f = f + top - jet[n]
    return DHProblem(f, jet, ValueVec())


def _same(a: Coefficient, b: Coefficient) -> bool:
    return vanishes(a - b)


def _brute_eval(g: DiffPoly, jet: list[Fraction]) -> Fraction:
    """g_alg at a rational jet of x1, summed monomial by monomial."""
    total = Fraction(0)
    for monomial, coeff in g.terms:
        assert isinstance(coeff, Fraction)
        value = coeff
        for (_, order), exp in monomial:
            value *= jet[order] ** exp
        total += value
    return total


# --- suites --------------------------------------------------------------------


def series_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """Valuation and derivation laws, angular components and the residue section."""
    result = SuiteResult("series")
    for trial in range(config.trials.random_pairs):
        stage = config.tower(rng.randint(1, 2))
        a = random_nonzero_series(rng, stage)
        b = random_nonzero_series(rng, stage)
        c = random_series(rng, stage.below())
        d = random_series(rng, stage.below())
        assert isinstance(a, TowerElement) and isinstance(b, TowerElement)
        top = stage.height - 1
        label = f"pair {trial}: a = {format_series(a)}, b = {format_series(b)}"
        result.run(
            f"{label} (Leibniz)",
            lambda: _same(derive(a * b), derive(a) * b + a * derive(b)),
        )
        result.run(
            f"{label} (v(ab) = v(a) + v(b))",
            lambda: valuation(a * b) == valuation(a) + valuation(b),
        )
        result.run(
            f"{label} (v(a + b) >= min)",
            lambda: vanishes(a + b) or not valuation(a + b) < min(valuation(a), valuation(b)),
        )
        result.run(
            f"{label} (v(a + b) = min when v(a) != v(b))",
            lambda: valuation(a) == valuation(b)
            or valuation(a + b) == min(valuation(a), valuation(b)),
        )
        result.run(
            f"{label} (ac multiplicative)",
            lambda: angular_component(a * b, full=True)
            == angular_component(a, full=True) * angular_component(b, full=True),
        )

        def small_perturbation() -> bool:
            offset = a.terms[0][0] - b.terms[0][0] + 1
            small = b * generator(stage, top, offset)
            return valuation(small) > valuation(a) and _same(
                angular_component(a + small), angular_component(a)
            )

        def residue_is_ac() -> bool:
            unit = a * generator(stage, top, -a.terms[0][0])
            assert isinstance(unit, TowerElement)
            return _same(residue(unit), angular_component(unit))

        def section() -> bool:
            image_c, image_d = residue_section(c, stage), residue_section(d, stage)
            assert isinstance(image_c, TowerElement)
            return (
                _same(residue(image_c), c)
                and _same(residue_section(c * d, stage), image_c * image_d)
                and _same(residue_section(c + d, stage), image_c + image_d)
            )

        result.run(f"{label} (ac(a + b') = ac(a) when v(b') > v(a))", small_perturbation)
        result.run(f"{label} (residue = ac at valuation 0)", residue_is_ac)
        result.run(f"{label} (residue section)", section)
    return result


def diffpoly_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """δ is a ring derivation compatible with evaluation; separants and factor selection."""
    result = SuiteResult("diffpoly")
    stage = config.tower(1)
    for trial in range(config.trials.random_pairs):
        p = random_diffpoly(rng, stage, 2)
        q = random_diffpoly(rng, stage, 2)
        point = [random_nonzero_series(rng, stage, 3) for _ in range(2)]
        label = f"pair {trial}: p = {p}, q = {q}"
        result.run(
            f"{label} (product rule)",
            lambda: ((p * q).derive() - (p.derive() * q + p * q.derive())).is_zero,
        )
        result.run(
            f"{label} (sum rule)", lambda: ((p + q).derive() - p.derive() - q.derive()).is_zero
        )
        result.run(
            f"{label} (evaluation commutes with δ)",
            lambda: _same(p.derive().diff_eval(point), derive(p.diff_eval(point))),
        )

        def linear_in_top() -> bool:
            if not p.involves(0):
                return True
            n = p.order(0)
            g = p.derive()
            coefficient = g.partial(0, n + 1)
            return (coefficient - p.separant(0)).is_zero and coefficient.partial(0, n + 1).is_zero

        result.run(f"{label} (linear in x1^(n+1))", linear_in_top)

    for trial in range(config.trials.random_problems):
        problem = random_problem(rng)
        f = problem.poly
        n = f.order()
        jet = [Fraction(c) for c in problem.jet[: n + 1]]
        shifts = rng.sample(range(1, 6), 2)
        factors = [f + k for k in shifts] + [f]
        rng.shuffle(factors)
        label = f"problem {trial}: f = {f}, c = {[str(c) for c in jet]}"

        def difference_quotient() -> bool:
            h = generator(stage, 0)
            moved = [*jet[:n], jet[n] + h]
            quotient = (f.alg_eval([moved]) - f.alg_eval([jet])) / h
            assert isinstance(quotient, TowerElement)
            return _same(residue(quotient), f.separant().alg_eval([jet]))

        def factor_selection() -> bool:
            brute = [i for i, g in enumerate(factors) if _brute_eval(g, jet) == 0]
            return brute == [select_vanishing_factor(factors, [jet])]

        result.run(f"{label} (separant as difference quotient)", difference_quotient)
        result.run(f"{label} (factor selection)", factor_selection)
    return result


def taylor_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """T*(x) against the jet, the valued Taylor property and f; T* against δ, sums and products."""
    result = SuiteResult("taylor")
    stage1, stage2 = config.tower(1), config.tower(2)
    for trial in range(config.trials.random_problems):
        problem = random_problem(rng)
        n = problem.order
        p = random_diffpoly(rng, problem.poly.field, 1, max_order=2, max_degree=2)
        q = random_diffpoly(rng, problem.poly.field, 1, max_order=2, max_degree=2)
        values = [random_series(rng, stage1, 3) for _ in range(HOMOMORPHISM_TERMS + 1)]
        label = f"problem {trial}: f = {problem.poly}, c = {[str(c) for c in problem.jet]}"
        try:
            point = prolong(problem.poly, problem.jet, TAYLOR_TERMS - 1)
            alpha = twisted_taylor(point, TAYLOR_TERMS, stage1)
        except Exception as err:
            result.trials += 1
            result.record(label, err)
            continue

        def constant_terms() -> bool:
            derivatives = jet_of(alpha, n)
            return all(
                _same(d.coefficient(0), c)
                for d, c in zip(derivatives, problem.jet)
                if isinstance(d, TowerElement)
            )

        def residual() -> bool:
            value = problem.poly.embed(alpha.field).diff_eval(alpha)
            if not vanishes(value):
                return False
            return not isinstance(value, TowerElement) or value.prec is None or (
                value.prec >= TAYLOR_TERMS - n
            )

        def commutes_with_derivation() -> bool:
            shifted = twisted_taylor(shift(point), TAYLOR_TERMS - 1, stage1)
            over_stage1 = taylor_series(values, HOMOMORPHISM_TERMS + 1, stage2)
            shifted_values = taylor_series(values[1:], HOMOMORPHISM_TERMS, stage2)
            return _same(derive(alpha), shifted) and _same(derive(over_stage1), shifted_values)

        def homomorphism() -> bool:
            image_p = apply_morphism(point, p, HOMOMORPHISM_TERMS, stage1)
            image_q = apply_morphism(point, q, HOMOMORPHISM_TERMS, stage1)
            product = apply_morphism(point, p * q, HOMOMORPHISM_TERMS, stage1)
            total = apply_morphism(point, p + q, HOMOMORPHISM_TERMS, stage1)
            return _same(product, image_p * image_q) and _same(total, image_p + image_q)

        result.run(f"{label} (constant terms)", constant_terms)
        result.run(f"{label} (valued Taylor)", lambda: check_valued_taylor(point, alpha))
        result.run(f"{label} (residual)", residual)
        result.run(f"{label} (T* commutes with δ)", commutes_with_derivation)
        result.run(f"{label} (T* is a ring homomorphism)", homomorphism)
    return result


def _binomial_half(k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out = out * (Fraction(1, 2) - j) / (j + 1)
    return out


def solver_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """The exponential law, √(1 + t), the iterated tower and random ball checks."""
    result = SuiteResult("solver")
    stage1, stage2, stage3 = (config.tower(h) for h in (1, 2, 3))

    x = DiffPoly.variable(stage1, 1, 0)
    exp_problem = DHProblem(x.derive() - x, (embed(1, stage1), embed(1, stage1)), ValueVec.of(5))

    def exponential() -> bool:
        b = solve_dh(exp_problem, 12, stage2)
        coefficients = [b.coefficient(i) for i in range(12)]
        exact = all(
            _same(c, embed(Fraction(1, factorial(i)), field_of(c)))
            for i, c in enumerate(coefficients)
        )
        return exact and check_dl(exp_problem, b)

    result.run("exponential law", exponential)

    def square_root() -> bool:
        q = TowerDescriptor()
        system = [parse_diffpoly("x2^2 - 1 - x1", stage1, num_vars=2)]
        lift = hensel_lift_system(system, [parse_series("t0", stage1)], [embed(1, q)], 8)
        root = lift.values[0]
        assert isinstance(root, TowerElement)
        return lift.iterations <= 5 and all(
            _same(root.coefficient(k), _binomial_half(k)) for k in range(8)
        )

    result.run("square root of 1 + t0", square_root)

    def iterated() -> bool:
        stages = iterate_stages(exp_problem, 8, [stage2, stage3])
        (first, b1), (second, b2) = stages
        near1, near2 = closeness(first, b1), closeness(second, b2)
        ceiling = ValueVec.of(10**6, 10**6)
        certified = check_dl(first, b1) and check_dl(second, b2)
        return certified and near1 < near2 and ceiling < near2

    result.run("iterated tower", iterated)

    for trial in range(config.trials.random_problems):
        base = random_problem(rng)
        gamma = ValueVec.of(rng.randint(-5, 10))
        jet = tuple(embed(c, stage1) for c in base.jet)
        problem = DHProblem(base.poly.embed(stage1), jet, gamma)
        label = f"problem {trial}: f = {base.poly}, γ = {gamma}"
        result.run(label, lambda: check_dl(problem, solve_dh(problem, TAYLOR_TERMS, stage2)))
    return result


def weil_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """Descent of x² + 1 over Q(i), τ on a point grid and the valuation bounds."""
    result = SuiteResult("weil")
    gaussian = gaussian_rationals()
    presentation = ExtensionPresentation.parse(gaussian, ["x1"], ["x1^2 + 1"])
    desc = descend(presentation)
    q = gaussian.field

    def hand_case() -> bool:
        a = DiffPoly.variable(q, 2, 0)
        b = DiffPoly.variable(q, 2, 1)
        expected = [a * a - b * b + 1, a * b * 2]
        return len(desc.relations) == 2 and all(
            (r - e).is_zero for r, e in zip(desc.relations, expected)
        )

    def tau_root() -> bool:
        image = tau({(0, 0): Fraction(0), (1, 0): Fraction(1)}, desc)
        return image[(0, 0)] == gaussian.basis_element(1)

    def grid() -> bool:
        values = [Fraction(v) for v in range(-2, 3)]
        k_points = descended_grid(desc, values)
        l_points = extension_grid(presentation, values)
        images = {point_key(tau(p, desc)) for p in k_points}
        round_trip = all(
            point_key(tau_inverse(tau(p, desc), desc)) == point_key(p) for p in k_points
        )
        return round_trip and images == {point_key(p) for p in l_points} and len(images) == 2

    result.run("descent of x1^2 + 1", hand_case)
    result.run("τ sends (0, 1) to i", tau_root)
    result.run("τ bijection on the {-2..2} grid", grid)

    ramified = ramified_quadratic(config.precision[0])
    base = ramified.field
    hypotheses = 0
    for trial in range(config.trials.random_pairs):
        phi = [random_series(rng, base, 3) for _ in range(2)]
        step = [random_series(rng, base, 2) for _ in range(2)]
        if all(vanishes(s) for s in step):
            step[0] = random_nonzero_series(rng, base, 2)
        psi = [a - s for a, s in zip(phi, step)]
        gamma = ValueVec.of(Fraction(rng.randint(-4, 12), 2))
        label = f"pair {trial}: γ = {gamma}, φ - ψ = {[format_series(s) for s in step]}"

        def continuity() -> bool:
            nonlocal hypotheses
            witness = continuity_bound(ramified, phi, psi, gamma)
            hypotheses += witness.hypothesis
            return True

        result.run(f"{label} (continuity)", continuity)
        result.run(
            f"{label} (separated)", lambda: separated_lower_bound(ramified, phi, psi).holds
        )
    _LOG.info("continuity hypothesis held on %d pairs", hypotheses)

    span = linear_span_basis(config.precision[0])

    def rejects_linear_span() -> bool:
        return not is_separated_sample(span, [[Fraction(1), Fraction(-1)]])

    def accepts_ramified() -> bool:
        samples = [
            [random_series(rng, base, 3) for _ in range(2)]
            for _ in range(config.trials.separated_samples)
        ]
        samples = [s for s in samples if not all(vanishes(a) for a in s)]
        return is_separated_sample(ramified, samples)

    result.run("(1, 1 + t0) is not separated", rejects_linear_span)
    result.run("(1, s) passes the separated sample", accepts_ramified)

    for trial in range(config.trials.random_pairs):
        algebra = rng.choice([gaussian, ramified])
        generators = rng.randint(1, 2)
        presentation = ExtensionPresentation(
            algebra, tuple(f"x{i + 1}" for i in range(generators))
        )
        instance = descend(presentation)
        generator, order = rng.randrange(generators), rng.randint(0, 3)
        label = f"{algebra.name}, x{generator + 1}^({order}) (descent derivation)"

        def verified() -> bool:
            verify_descent_derivation(instance, generator, order)
            return True

        result.run(label, verified)
    return result


def parser_suite(config: RunConfig, rng: random.Random) -> SuiteResult:
    """Printing then parsing gives back the same normal form."""
    result = SuiteResult("parser")
    for trial in range(config.trials.parser_round_trips):
        stage = config.tower(rng.randint(0, 2))
        num_vars = rng.randint(1, 3)
        p = random_diffpoly(rng, stage, num_vars)
        text = str(p)
        result.run(
            f"poly {trial}: {text}",
            lambda: (parse_diffpoly(text, stage, num_vars) - p).is_zero,
        )
        if stage.height:
            x = random_series(rng, stage)
            shown = format_series(x)
            result.run(f"series {trial}: {shown}", lambda: _same(parse_series(shown, stage), x))
    return result


SUITES: dict[str, Callable[[RunConfig, random.Random], SuiteResult]] = {
    "series": series_suite,
    "diffpoly": diffpoly_suite,
    "taylor": taylor_suite,
    "solver": solver_suite,
    "weil": weil_suite,
    "parser": parser_suite,
}


def run_suites(names: list[str], config: RunConfig) -> dict[str, Any]:
    """Run the named suites and build the report document."""
    results = []
    for name in names:
        rng = random.Random(f"{config.seed}:{name}")
        _LOG.info("running suite %s with seed %d", name, config.seed, extra={"suite": name})
        results.append(SUITES[name](config, rng))
    return {
        "seed": config.seed,
        "suites": [r.to_json() for r in results],
        "trials": sum(r.trials for r in results),
        "failed": sum(len(r.failures) for r in results),
        "ok": all(r.ok for r in results),
    }

