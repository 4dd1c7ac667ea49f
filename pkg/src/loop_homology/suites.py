"""Named verification suites: each check runs one engine operation on shipped fixtures."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from .algebra import check_confluence, poincare
from .arithmetic import check_range
from .cobar import chain_from_labels, check_square_zero, cotor, format_chain, is_boundary, is_permanent
from .errors import ComputationError, UnknownSuite
from .fixture_parser import expected_product_dims, load_fixture
from .graded import GradedDims
from .groebner import quotient_ring
from .hopf import check_coassociativity, dual_structure_constants, verify_bialgebra
from .model import CheckResult, CheckStatus, Fixture, FixtureKind, SuiteReport, VerificationReport
from .registry import fixture_names, shipped_coalgebra, shipped_fixture
from .resolution import ext_dims, factor_homology, verify_resolution
from .spectra import homology_of_derivation, run_bss, validate_derivation
from .steenrod import check_cohomology_operations, verify_steenrod_module


@dataclass(frozen=True)
class Outcome:
    passed: bool
    degree: Optional[int] = None
    witness: Optional[str] = None
    skipped: bool = False

    @classmethod
    def of_report(cls, report: VerificationReport) -> "Outcome":
        failure = report.first_failure
        if failure is None:
            return cls(True)
        witness = f"{failure.witness}: {failure.detail}" if failure.detail else failure.witness
        return cls(False, failure.degree, witness)

    @classmethod
    def of_dims(cls, found: GradedDims, expected: GradedDims, what: str) -> "Outcome":
        degree = found.first_difference(expected)
        if degree is None:
            return cls(True)
        return cls(False, degree, f"{what}: {found[degree]} against {expected[degree]}")


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    ceiling: int
    run: Callable[[int], Outcome]


def _first_failing(outcomes: Sequence[Outcome]) -> Outcome:
    failed = [o for o in outcomes if not o.passed]
    if not failed:
        return Outcome(True)
    return min(failed, key=lambda o: o.degree if o.degree is not None else -1)


def confluence_outcome(fixture: Fixture, cap: int) -> Outcome:
    return Outcome.of_report(check_confluence(fixture.presentation, cap))


def poincare_outcome(fixture: Fixture, cap: int) -> Outcome:
    found = poincare(fixture.presentation, cap)
    outcomes = []
    expected = expected_product_dims(fixture, cap)
    if expected is not None:
        outcomes.append(Outcome.of_dims(found, expected, "PBW dims against the product series"))
    if fixture.expected_dims is not None:
        outcomes.append(Outcome.of_dims(found, fixture.expected_dims, "PBW dims against the listed dims"))
    return _first_failing(outcomes)


def bialgebra_outcome(fixture: Fixture, cap: int) -> Outcome:
    return Outcome.of_report(verify_bialgebra(fixture.presentation, fixture.coproduct, cap))


def steenrod_outcome(fixture: Fixture, cap: int) -> Outcome:
    return Outcome.of_report(
        verify_steenrod_module(fixture.presentation, fixture.coproduct, fixture.steenrod, cap)
    )


def bss_outcome(fixture: Fixture, cap: int) -> Outcome:
    schedule = fixture.schedule
    if schedule is None:
        return Outcome(True)
    result = run_bss(schedule, cap)
    if schedule.expect_unit:
        return Outcome.of_dims(result.einf, GradedDims.unit(cap), "E-infinity")
    return Outcome(True)


def fixture_outcome(fixture: Fixture, cap: int) -> Outcome:
    """Every self-consistency check that applies to one fixture."""
    if fixture.kind == FixtureKind.RING:
        ring = fixture.ring
        outcomes = [Outcome.of_report(check_cohomology_operations(ring))]
        if fixture.expected_dims is not None:
            outcomes.append(Outcome.of_dims(quotient_ring(ring, cap).dims(), fixture.expected_dims, "quotient dims"))
        outcomes.append(Outcome.of_report(check_coassociativity(dual_structure_constants(ring, cap))))
        return _first_failing(outcomes)
    confluence = confluence_outcome(fixture, cap)
    if not confluence.passed:
        return confluence
    outcomes = [poincare_outcome(fixture, cap), bialgebra_outcome(fixture, cap), steenrod_outcome(fixture, cap)]
    if fixture.derivation is not None:
        validate_derivation(fixture.presentation, fixture.derivation, cap)
    return _first_failing(outcomes)


def _shipped(outcome: Callable[[Fixture, int], Outcome], name: str, cap: int) -> Outcome:
    return outcome(shipped_fixture(name), cap)


def _serre(cap: int) -> Outcome:
    page = shipped_fixture("serre-g2")
    found = homology_of_derivation(page.presentation, page.derivation, cap)
    return Outcome.of_dims(found, poincare(shipped_fixture("omega-g2").presentation, cap), "Serre page homology")


def _cotor(coalgebra: str, algebra: str, cap: int) -> Outcome:
    found = cotor(shipped_coalgebra(coalgebra, cap + 2), cap)
    return Outcome.of_dims(found, poincare(shipped_fixture(algebra).presentation, cap), f"Cotor of {coalgebra}")


def _boundary(coalgebra: str, words: Sequence[Sequence[str]], degree: int, cap: int) -> Outcome:
    if cap < degree:
        return Outcome(True, degree, f"claim lives in degree {degree}, above the cap", skipped=True)
    coalg = shipped_coalgebra(coalgebra, degree + 2)
    chain = chain_from_labels(words, coalg)
    verdict = is_boundary(chain, coalg, degree)
    if verdict.is_boundary:
        logging.debug(f"{format_chain(chain, coalg)} = d({format_chain(verdict.witness, coalg)})")
        return Outcome(True)
    return Outcome(False, degree, f"{format_chain(chain, coalg)} is not a boundary")


def _permanence(coalgebra: str, labels: Sequence[str], cap: int) -> Outcome:
    ring = shipped_fixture(coalgebra).ring
    coalg = shipped_coalgebra(coalgebra, cap + 2)
    for label in labels:
        # the word [x] sits one below the degree of x
        degree = ring.variables[ring.index(label)].degree - 1
        if degree > cap:
            continue
        if not is_permanent(label, coalg, cap):
            return Outcome(False, degree, f"[{label}] is not permanent")
    return Outcome(True)


def _square_zero(cap: int) -> Outcome:
    outcomes = [
        Outcome.of_report(check_square_zero(shipped_coalgebra(name, cap + 1), cap))
        for name in ("di4-homology", "bg2q-cohomology", "bsol-cohomology")
    ]
    return _first_failing(outcomes)


def _resolution(cap: int) -> Outcome:
    return Outcome.of_report(verify_resolution(cap))


def _factors(cap: int) -> Outcome:
    return _first_failing(
        [Outcome.of_dims(factor_homology(cap, f), GradedDims.unit(cap), f"factor {f}") for f in ("xazte", "yb")]
    )


def _ext(cap: int) -> Outcome:
    return Outcome.of_dims(ext_dims(cap), cotor(shipped_coalgebra("di4-homology", cap + 2), cap), "Ext against Cotor")


def _arithmetic(cap: int) -> Outcome:
    # the q range is fixed; the cap bounds degrees, not q
    failures = check_range(range(3, ARITHMETIC_Q_LIMIT + 1, 2))
    if failures:
        return Outcome(False, None, failures[0])
    return Outcome(True)


def _fixture_checks(fixture: str, anchor: str, ceiling: int, names: Sequence[str]) -> List[Check]:
    outcomes = {
        "confluence": confluence_outcome,
        "poincare": poincare_outcome,
        "bialgebra": bialgebra_outcome,
        "steenrod": steenrod_outcome,
        "bss": bss_outcome,
    }
    return [Check(name, anchor, ceiling, partial(_shipped, outcomes[name], fixture)) for name in names]


THEOREM_CHECKS = ("confluence", "poincare", "bialgebra", "steenrod", "bss")
BG2Q_BOUNDARY = [["y5", "y5"], ["y3", "t7"], ["t7", "y3"]]
BSOL_BOUNDARY = [["t11", "t11"], ["u15", "t7"], ["t7", "u15"]]
FIXTURE_CEILING = 24
ARITHMETIC_CEILING = 9999
ARITHMETIC_Q_LIMIT = 9999

SUITES: Dict[str, List[Check]] = {
    "theorem1": _fixture_checks(
        "omega-bg2q", "H_*(Omega BG2(q)) as a Hopf algebra over the Steenrod algebra", 40, THEOREM_CHECKS
    ),
    "theorem2": _fixture_checks(
        "omega-bsol", "H_*(Omega BSol(q)) as a Hopf algebra over the Steenrod algebra", 48, THEOREM_CHECKS
    ),
    "serre": [Check("serre-page", "d5(b5) = a2^2 gives H_*(Omega G2)", 30, _serre)],
    "cobar": [
        Check("cotor-di4", "Cotor of H_*(DI(4)) = P[a6]/(a6^2) (x) P[b10,c12,e26]", 28,
              partial(_cotor, "di4-homology", "omega-di4")),
        Check("cotor-bg2q", "Cotor of H_*(BG2(q)) against H_*(Omega BG2(q))", 12,
              partial(_cotor, "bg2q-cohomology", "omega-bg2q")),
        Check("cotor-bsol", "Cotor of H_*(BSol(q)) against H_*(Omega BSol(q))", 20,
              partial(_cotor, "bsol-cohomology", "omega-bsol")),
        Check("boundary-bg2q", "[y5]^2 + [[y3],[t7]] is a boundary, forcing [a2,z6] = a4^2", 8,
              partial(_boundary, "bg2q-cohomology", BG2Q_BOUNDARY, 8)),
        Check("boundary-bsol", "[t11]^2 + [[u15],[t7]] is a boundary in the cobar of H_*(BSol(q))", 20,
              partial(_boundary, "bsol-cohomology", BSOL_BOUNDARY, 20)),
        Check("permanence-bg2q", "[y3], [y5], [t7] are permanent cycles", 6,
              partial(_permanence, "bg2q-cohomology", ["y3", "y5", "t7"])),
        Check("square-zero", "the cobar differential squares to zero", 20, _square_zero),
    ],
    "resolution": [
        Check("resolution", "P_* is a free H^*(DI(4))-resolution of F2", 40, _resolution),
        Check("factor-acyclicity", "both tensor factors of P_* are acyclic", 40, _factors),
        Check("ext-vs-cotor", "Ext over H^*(DI(4)) equals Cotor over H_*(DI(4))", 28, _ext),
    ],
    "arithmetic": [
        Check("bockstein-exponents", "r2 = r6 = r14 = nu2(k) + 3 = r4 - 1", ARITHMETIC_CEILING, _arithmetic),
    ],
    "fixtures": [
        Check(f"fixture:{name}", "shipped fixture data is self-consistent", FIXTURE_CEILING,
              partial(_shipped, fixture_outcome, name))
        for name in fixture_names()
        if "corrupt" not in name
    ],
    "theorem1-corrupt-demo": _fixture_checks(
        "omega-bg2q-corrupt-confluence", "negative control: [b10,z6] dropped", 40, ["confluence"]
    ),
    "theorem1-corrupt-coproduct": _fixture_checks(
        "omega-bg2q-corrupt-coproduct", "negative control: a4 primitive", 40, ["confluence", "bialgebra"]
    ),
    "theorem1-corrupt-steenrod": _fixture_checks(
        "omega-bg2q-corrupt-steenrod", "negative control: Sq2_*(b10) = 0", 40, ["confluence", "steenrod"]
    ),
}

ALL_SUITES = ["theorem1", "theorem2", "serre", "cobar", "resolution", "arithmetic", "fixtures"]


def suite_names() -> List[str]:
    return sorted(SUITES) + ["all"]


def _find_check(suite: str, check: str) -> Check:
    for candidate in SUITES[suite]:
        if candidate.name == check:
            return candidate
    raise UnknownSuite(f"Suite {suite} has no check {check}")


def effective_cap(check: Check, cap: Optional[int]) -> int:
    return check.ceiling if cap is None else min(cap, check.ceiling)


def _run_check(suite: str, check: Check, cap: Optional[int]) -> CheckResult:
    start = time.perf_counter()
    try:
        outcome = check.run(effective_cap(check, cap))
    except ComputationError as err:
        outcome = Outcome(False, err.degree, f"{type(err).__name__}: {err}")
    millis = int((time.perf_counter() - start) * 1000)
    if outcome.skipped:
        status = CheckStatus.SKIP
    elif outcome.passed:
        status = CheckStatus.PASS
        logging.info(f"{suite}/{check.name} passed in {millis} ms")
    else:
        status = CheckStatus.FAIL
        logging.warning(f"{suite}/{check.name} failed at degree {outcome.degree}: {outcome.witness}")
    return CheckResult(suite, check.name, check.anchor, status, outcome.degree, outcome.witness, millis)


def _execute(suite: str, check_name: str, cap: Optional[int]) -> CheckResult:
    """Run one registered check; top level so worker processes can import it."""
    return _run_check(suite, _find_check(suite, check_name), cap)


def _skipped(suite: str, check: Check) -> CheckResult:
    return CheckResult(suite, check.name, check.anchor, CheckStatus.SKIP, witness="confluence failed")


def _run_one_suite(suite: str, cap: Optional[int], jobs: int) -> List[CheckResult]:
    checks = SUITES[suite]
    logging.info(f"Running suite {suite} ({len(checks)} checks, jobs={jobs})")
    results: List[CheckResult] = []
    rest = checks
    if checks and checks[0].name == "confluence":
        results.append(_execute(suite, "confluence", cap))
        rest = checks[1:]
        if results[0].status == CheckStatus.FAIL:
            return results + [_skipped(suite, check) for check in rest]
    if jobs > 1 and len(rest) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_execute, suite, check.name, cap) for check in rest]
            results.extend(future.result() for future in futures)
    else:
        results.extend(_execute(suite, check.name, cap) for check in rest)
    return results


def run_suite(name: str, cap: Optional[int] = None, jobs: int = 1) -> SuiteReport:
    """Run a named suite; cap limits every check to min(cap, its ceiling)."""
    if name != "all" and name not in SUITES:
        raise UnknownSuite(f"Unknown suite {name!r}; known: {', '.join(suite_names())}")
    start = time.perf_counter()
    report = SuiteReport(name)
    for suite in ALL_SUITES if name == "all" else [name]:
        report.results.extend(_run_one_suite(suite, cap, jobs))
    report.millis = int((time.perf_counter() - start) * 1000)
    return report


def verify_fixture(path: Union[str, Path], cap: Optional[int] = None) -> SuiteReport:
    """Run the applicable checks on a fixture file that is not shipped with the package."""
    fixture = load_fixture(path)
    label = f"fixture:{fixture.name}"
    anchor = fixture.anchor or str(path)
    if fixture.kind == FixtureKind.RING:
        checks = [Check("ring", anchor, FIXTURE_CEILING, partial(fixture_outcome, fixture))]
    else:
        outcomes = [confluence_outcome, poincare_outcome, bialgebra_outcome, steenrod_outcome, bss_outcome]
        names = ["confluence", "poincare", "bialgebra", "steenrod", "bss"]
        checks = [Check(n, anchor, FIXTURE_CEILING, partial(o, fixture)) for n, o in zip(names, outcomes)]
    start = time.perf_counter()
    report = SuiteReport(label)
    for check in checks:
        report.results.append(_run_check(label, check, cap))
        if check.name == "confluence" and report.results[-1].status == CheckStatus.FAIL:
            report.results.extend(_skipped(label, rest) for rest in checks[1:])
            break
    report.millis = int((time.perf_counter() - start) * 1000)
    return report
