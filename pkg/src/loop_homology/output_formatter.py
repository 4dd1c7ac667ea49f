import json
import logging
import os
from collections import defaultdict
from typing import List, Sequence

from .arithmetic import BocksteinExponents
from .dataclass_serialization import DataclassJSONEncoder, dataclass_to_dict
from .graded import GradedDims
from .model import CheckStatus, SuiteReport

REPORT_HEADERS = ["Check", "Status", "Degree", "Witness", "Millis", "Anchor"]
EXTENSIONS = {"machine": ".jsonl", "text": ".txt"}


def ascii_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> List[str]:
    """Lines of a bordered ASCII table, one column per header."""
    col_widths = [len(header) for header in headers]
    for row in rows:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(cell))

    # Padding
    col_widths = [width + 2 for width in col_widths]

    border = "+" + "+".join("-" * width for width in col_widths) + "+"
    lines = [border]
    lines.append("|" + "".join(f" {headers[i]:{col_widths[i]-2}} |" for i in range(len(headers))))
    lines.append("+" + "+".join("=" * width for width in col_widths) + "+")
    for row in rows:
        lines.append("|" + "".join(f" {row[i]:{col_widths[i]-2}} |" for i in range(len(row))))
    lines.append(border)
    return lines


def _cell(value) -> str:
    return "-" if value is None else str(value)


def format_report_text(report: SuiteReport) -> str:
    """One ASCII table per suite, then a summary line."""
    logging.info(f"Formatting {len(report.results)} check results as text")

    by_suite = defaultdict(list)
    for result in report.results:
        by_suite[result.suite].append(result)

    lines = []
    for suite, results in by_suite.items():
        title = f"{suite} ({len(results)} checks)"
        lines.extend([title, "=" * len(title), ""])
        rows = [
            [r.check, r.status.name, _cell(r.degree), _cell(r.witness), str(r.millis), r.anchor]
            for r in results
        ]
        lines.extend(ascii_table(REPORT_HEADERS, rows))
        lines.append("")

    counts = {status: sum(1 for r in report.results if r.status == status) for status in CheckStatus}
    verdict = "PASSED" if report.passed else "FAILED"
    lines.append(
        f"{report.suite}: {verdict} - {counts[CheckStatus.PASS]} passed, {counts[CheckStatus.FAIL]} failed, "
        f"{counts[CheckStatus.SKIP]} skipped in {report.millis} ms"
    )
    return "\n".join(lines)


def format_report_machine(report: SuiteReport) -> str:
    """JSON Lines: one object per check with a fixed set of keys."""
    logging.info(f"Formatting {len(report.results)} check results as JSON Lines")
    return "\n".join(
        json.dumps(dataclass_to_dict(result, keep_none=True), cls=DataclassJSONEncoder)
        for result in report.results
    )


def format_cotor_text(name: str, dims: GradedDims) -> str:
    title = f"Cotor of {name} through degree {dims.cap}"
    lines = [title, "=" * len(title), ""]
    lines.extend(ascii_table(["Degree", "Dimension"], [[str(n), str(d)] for n, d in enumerate(dims.dims)]))
    return "\n".join(lines)


def format_cotor_machine(name: str, dims: GradedDims) -> str:
    return "\n".join(
        json.dumps({"coalgebra": name, "degree": n, "dim": d}) for n, d in enumerate(dims.dims)
    )


def format_nu2_text(exponents: BocksteinExponents) -> str:
    rows = [[f"r{i}", str(r)] for i, r in zip((2, 4, 6, 14), exponents.as_tuple())]
    lines = [f"q = {exponents.q}, k = {exponents.k}", ""]
    lines.extend(ascii_table(["Exponent", "nu2(q^i - 1)"], rows))
    failures = exponents.identity_failures()
    lines.append("")
    lines.append("identities hold" if not failures else "identities fail: " + "; ".join(failures))
    return "\n".join(lines)


def format_nu2_machine(exponents: BocksteinExponents) -> str:
    record = dataclass_to_dict(exponents)
    record["k"] = exponents.k
    record["identity_failures"] = exponents.identity_failures()
    return json.dumps(record, cls=DataclassJSONEncoder)


def write_output(content: str, output_path: str, format_type: str) -> None:
    """Write content to a file or to stdout ('-'); a path without extension gets one."""
    if output_path == "-":
        print(content)
        logging.info("Wrote output to stdout")
        return

    if "." not in os.path.basename(output_path):
        output_path += EXTENSIONS.get(format_type, "")

    with open(output_path, "w") as f:
        f.write(content + "\n")
    logging.info(f"Wrote output to {output_path}")
