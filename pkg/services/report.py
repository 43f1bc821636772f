"""
Report service - renders polynomials, series and verification tables as text, JSON or CSV.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Dict, List, Sequence

from core.coxeter import Family
from core.polynomial import IntPolynomial


@dataclass(frozen=True)
class ResultRow:
    family: Family
    rank: int
    polynomial: IntPolynomial

    @property
    def label(self) -> str:
        return f"{Family(self.family).value}_{self.rank}"


class ReportService:
    """Formats results for standard output; ordering is always fixed."""

    CSV_HEADER = ['family', 'rank', 'polynomial', 'degree']

    def __init__(self, output_format: str = 'text'):
        self.output_format = output_format

    def _csv(self, header: List[str], rows: List[List]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue().rstrip('\n')

    def format_rows(self, rows: Sequence[ResultRow], labelled: bool = False) -> str:
        """One polynomial per row; a lone row prints bare unless labelled."""
        if self.output_format == 'csv':
            return self._csv(self.CSV_HEADER, [
                [Family(r.family).value, r.rank, str(r.polynomial), r.polynomial.degree] for r in rows
            ])
        if self.output_format == 'json':
            if len(rows) == 1 and not labelled:
                return rows[0].polynomial.to_json()
            return json.dumps([
                {'family': Family(r.family).value, 'rank': r.rank, 'polynomial': r.polynomial.to_json_obj()}
                for r in rows
            ], separators=(',', ':'))
        if len(rows) == 1 and not labelled:
            return str(rows[0].polynomial)
        return '\n'.join(f"{r.label}: {r.polynomial}" for r in rows)

    def format_routes(self, row_label: str, routes: Dict[str, IntPolynomial]) -> str:
        """Side-by-side results of several routes for one group, plus agreement."""
        agree = len({p for p in routes.values()}) == 1
        if self.output_format == 'json':
            return json.dumps({
                'group': row_label,
                'routes': {name: p.to_json_obj() for name, p in routes.items()},
                'agree': agree,
            }, separators=(',', ':'))
        if self.output_format == 'csv':
            return self._csv(['group', 'route', 'polynomial', 'degree'], [
                [row_label, name, str(p), p.degree] for name, p in routes.items()
            ])
        lines = [f"{name}: {p}" for name, p in routes.items()]
        lines.append(f"agree: {'yes' if agree else 'no'}")
        return '\n'.join(lines)

    def format_counts(self, family: Family, counts: Dict[int, Dict[tuple, int]], dump: str) -> str:
        """Subset counts per rank; json prints the raw series dump."""
        if self.output_format == 'json':
            return dump
        if self.output_format == 'csv':
            return self._csv(['family', 'rank', 'k', 'l', 'count'], [
                [Family(family).value, n, k, l, c]
                for n, table in counts.items() for (k, l), c in table.items()
            ])
        lines = []
        for n, table in counts.items():
            cells = ' '.join(f"({k},{l})={c}" for (k, l), c in table.items())
            lines.append(f"{Family(family).value}_{n}: {cells}")
        return '\n'.join(lines)

    def format_verification(self, results) -> str:
        """Pass/fail table in suite order."""
        if self.output_format == 'json':
            return json.dumps([
                {'suite': r.name, 'passed': r.passed, 'checks': r.checks, 'message': r.message}
                for r in results
            ], separators=(',', ':'))
        if self.output_format == 'csv':
            return self._csv(['suite', 'passed', 'checks'], [
                [r.name, 'yes' if r.passed else 'no', r.checks] for r in results
            ])
        width = max([len('suite')] + [len(r.name) for r in results])
        lines = [f"{'suite'.ljust(width)}  status  checks"]
        for r in results:
            status = 'pass' if r.passed else 'FAIL'
            lines.append(f"{r.name.ljust(width)}  {status:<6}  {r.checks}")
        passed = sum(1 for r in results if r.passed)
        lines.append(f"{passed}/{len(results)} suites passed")
        return '\n'.join(lines)
