#!/usr/bin/env python3
"""
Command-line entry point: characteristic polynomials of the left weak order
on finite and affine classical Coxeter groups.

    python main.py charpoly -f A -n 3
    python main.py descent-class -n 5 -I 2,4
    python main.py affine -f AffC -n 4 --method both
    python main.py series -f B -N 10
    python main.py verify --suite all --max-a 5 --max-bd 4
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from core.config import Config
from core.coxeter import Family, w0_length
from core.errors import InteriorConditionError, UsageError, VerificationFailure, WeakOrderError
from core.polynomial import IntPolynomial
from core.utils import parse_index_set
from services.charpoly import CharPolyEngine, alternating_descent_set, normalize_finite
from services.genfun import (
    default_order,
    extract_modified_charpoly,
    modified_char_poly_series,
    series_T,
    subset_counts,
)
from services.group_models import GroupModel
from services.report import ReportService, ResultRow
from services.validation import FORMATS, METHODS, SERIES_ROUTES, SUBCOMMANDS, CommandRequest, ValidationService
from services.verification import SUITES, VerificationService
from services.weak_order import (
    build_group_poset,
    char_poly_of_poset,
    descent_class_interval,
    modified_char_poly_of_poset,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='weakchar',
        description='Characteristic polynomials of the left weak order on classical Coxeter groups.',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', dest='output_format', choices=FORMATS, default='text')
    common.add_argument('--method', choices=METHODS, default='auto')
    common.add_argument('--cap', type=int, help='enumeration cap for group posets')

    sub = parser.add_subparsers(dest='subcommand', required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name != 'verify':
            p.add_argument('-f', '--family')
        if name in ValidationService.NEEDS_RANK:
            p.add_argument('-n', '--rank', type=int)
        if name in ValidationService.RANGED:
            p.add_argument('--to', dest='rank_to', type=int)
        if name == 'descent-class':
            p.add_argument('-I', dest='lower', default='')
            p.add_argument('-J', dest='upper')
        if name == 'series':
            p.add_argument('-N', dest='truncation', type=int)
            p.add_argument('--counts', action='store_true')
            p.add_argument('--route', choices=SERIES_ROUTES, default='trivariate')
        if name == 'verify':
            p.add_argument('--suite', action='append', dest='suites')
            p.add_argument('--max-a', dest='max_a', type=int, default=4)
            p.add_argument('--max-bd', dest='max_bd', type=int, default=4)
            p.add_argument('--samples', type=int, default=500)
    return parser


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    """Turns parsed flags into a CommandRequest (parse errors surface here)."""
    family = getattr(args, 'family', None)
    if family is not None:
        family = Family.parse(family)
    elif args.subcommand in ('descent-class', 'alt'):
        family = Family.A
    upper = getattr(args, 'upper', None)
    suites = getattr(args, 'suites', None) or ['all']
    if 'all' in suites:
        suites = list(SUITES)
    else:
        suites = [s for part in suites for s in part.split(',') if s]
    return CommandRequest(
        subcommand=args.subcommand,
        family=family,
        rank=getattr(args, 'rank', None),
        rank_to=getattr(args, 'rank_to', None),
        lower=parse_index_set(getattr(args, 'lower', '')),
        upper=parse_index_set(upper) if upper is not None else None,
        method=args.method,
        output_format=args.output_format,
        truncation=getattr(args, 'truncation', None),
        route=getattr(args, 'route', 'trivariate'),
        counts=getattr(args, 'counts', False),
        cap=args.cap,
        suites=suites,
        max_a=getattr(args, 'max_a', 4),
        max_bd=getattr(args, 'max_bd', 4),
        samples=getattr(args, 'samples', 500),
    )


def cross_check(label: str, routes: Dict[str, Callable[[], IntPolynomial]]) -> IntPolynomial:
    """Runs every route, reports them on stderr and fails on disagreement."""
    results = {name: compute() for name, compute in routes.items()}
    distinct = set(results.values())
    if len(distinct) != 1:
        detail = ', '.join(f"{name}={p}" for name, p in results.items())
        print(f"routes: {', '.join(results)} (disagree)", file=sys.stderr)
        raise VerificationFailure(f"{label}: routes disagree: {detail}")
    print(f"routes: {', '.join(results)} (agree)", file=sys.stderr)
    return next(iter(results.values()))


def _poset_rank_limit(family: Family, config: Dict) -> int:
    return config['posetMaxRankA'] if family == Family.A else config['posetMaxRankBD']


def _model(family: Family, rank: int) -> Optional[GroupModel]:
    family, rank = normalize_finite(family, rank)
    return GroupModel(family, rank) if rank else None


def finite_routes(request: CommandRequest, rank: int, engine: CharPolyEngine,
                  config: Dict, modified: bool) -> Dict[str, Callable[[], IntPolynomial]]:
    """Independent routes to χ (or χ̂) of one finite group."""
    family = request.family
    normalized, effective = normalize_finite(family, rank)
    top = w0_length(normalized, effective)

    def poset_route() -> IntPolynomial:
        model = _model(family, rank)
        if model is None:
            return IntPolynomial.one()
        poset = build_group_poset(model, cap=config['enumerationCap'])
        return modified_char_poly_of_poset(poset) if modified else char_poly_of_poset(poset)

    def subset_route() -> IntPolynomial:
        if modified:
            return engine.modified_char_poly(family, rank)
        return engine.char_poly_subset_sum(family, rank)

    def decompose_route() -> IntPolynomial:
        model = _model(family, rank)
        if model is None:
            return IntPolynomial.one()
        chi = engine.char_poly_interval_decomposed(
            model.graph, model.identity(), model.longest_element(model.generator_indices)
        )
        return chi.reversed(top) if modified else chi

    def series_route() -> IntPolynomial:
        hat = extract_modified_charpoly(family, rank)
        return hat if modified else hat.reversed(top)

    available = {
        'poset': poset_route,
        'subset': subset_route,
        'decompose': decompose_route,
        'series': series_route,
    }
    if request.method != 'auto':
        return {request.method: available[request.method]}

    routes = {}
    if effective <= min(config['subsetRankCap'], config['bruteCountCap']):
        routes['subset'] = subset_route
        routes['decompose'] = decompose_route
    if not (family == Family.D and rank < 2):
        routes['series'] = series_route
    if rank <= _poset_rank_limit(family, config):
        routes['poset'] = poset_route
    return routes


def run_finite(request: CommandRequest, engine: CharPolyEngine, config: Dict, modified: bool) -> str:
    rows = []
    for rank in request.ranks:
        routes = finite_routes(request, rank, engine, config, modified)
        label = f"{request.family.value}_{rank}"
        rows.append(ResultRow(request.family, rank, cross_check(label, routes)))
    return ReportService(request.output_format).format_rows(rows, labelled=request.rank_to is not None)


def run_affine(request: CommandRequest, engine: CharPolyEngine) -> str:
    report = ReportService(request.output_format)
    family = request.family
    if request.method == 'both':
        if len(request.ranks) != 1:
            raise UsageError("--method both takes a single rank")
        rank = request.rank
        routes = {
            'direct': engine.affine_modified_char_poly_direct(family, rank),
            'recurrence': engine.affine_modified_char_poly_recurrence(family, rank),
        }
        output = report.format_routes(f"{family.value}_{rank}", routes)
        if len(set(routes.values())) != 1:
            print(output)
            raise VerificationFailure(f"{family.value}_{rank}: direct and recurrence disagree")
        return output
    rows = []
    for rank in request.ranks:
        available = {
            'direct': lambda r=rank: engine.affine_modified_char_poly_direct(family, r),
            'recurrence': lambda r=rank: engine.affine_modified_char_poly_recurrence(family, r),
        }
        routes = available if request.method == 'auto' else {request.method: available[request.method]}
        rows.append(ResultRow(family, rank, cross_check(f"{family.value}_{rank}", routes)))
    return report.format_rows(rows, labelled=request.rank_to is not None)


def descent_routes(rank: int, family: Family, lower, upper, method: str, engine: CharPolyEngine,
                   config: Dict) -> Dict[str, Callable[[], IntPolynomial]]:
    def poset_route() -> IntPolynomial:
        model = _model(family, rank)
        if model is None:
            return IntPolynomial.one()
        poset = build_group_poset(model, cap=config['enumerationCap'])
        return char_poly_of_poset(descent_class_interval(poset, lower, upper))

    available = {
        'decompose': lambda: engine.descent_class_char_poly(rank, lower, upper, family),
        'formula': lambda: engine.fixed_descent_formula(rank, lower),
        'poset': poset_route,
    }
    if method != 'auto':
        if method == 'formula' and (family != Family.A or upper != lower):
            raise UsageError("the product formula covers pure descent classes (J = I) in type A")
        return {method: available[method]}

    routes = {'decompose': available['decompose']}
    if family == Family.A and upper == lower:
        try:
            formula = engine.fixed_descent_formula(rank, lower)
            routes['formula'] = lambda: formula
        except InteriorConditionError:
            pass
    if rank <= _poset_rank_limit(family, config):
        routes['poset'] = poset_route
    return routes


def run_descent_class(request: CommandRequest, engine: CharPolyEngine, config: Dict) -> str:
    upper = request.upper if request.upper is not None else request.lower
    routes = descent_routes(request.rank, request.family, request.lower, upper, request.method, engine, config)
    chi = cross_check(f"{request.family.value}_{request.rank} descent class", routes)
    return ReportService(request.output_format).format_rows([ResultRow(request.family, request.rank, chi)])


def run_alt(request: CommandRequest, engine: CharPolyEngine, config: Dict) -> str:
    n = request.rank
    # rejects n < 2 before any route runs
    engine.alternating_char_poly(n)
    descents = alternating_descent_set(n)
    if request.method == 'formula':
        routes = {'formula': lambda: engine.alternating_char_poly(n)}
    elif request.method == 'auto':
        routes = {'formula': lambda: engine.alternating_char_poly(n)}
        extra = descent_routes(n - 1, Family.A, descents, descents, 'auto', engine, config)
        if 'formula' in extra:
            extra['fixed-descent'] = extra.pop('formula')
        routes.update(extra)
    else:
        routes = descent_routes(n - 1, Family.A, descents, descents, request.method, engine, config)
    chi = cross_check(f"Alt_{n}", routes)
    return ReportService(request.output_format).format_rows([ResultRow(Family.A, n, chi)])


def run_series(request: CommandRequest) -> str:
    order = request.truncation or default_order()
    report = ReportService(request.output_format)
    family = request.family
    if request.counts:
        start = 2 if family == Family.D else 0
        counts = {n: subset_counts(family, n) for n in range(start, order)}
        return report.format_counts(family, counts, series_T(family, order).to_json())
    hats = modified_char_poly_series(family, order, request.route)
    rows = [ResultRow(family, n, p) for n, p in hats.items()]
    return report.format_rows(rows, labelled=True)


def run_verify(request: CommandRequest, config: Dict) -> int:
    service = VerificationService(config)
    print(f"Running {len(request.suites)} suites "
          f"(max A rank {request.max_a}, max B/D rank {request.max_bd})...", file=sys.stderr)
    results = service.run(request.suites, request.max_a, request.max_bd, request.samples)
    print(ReportService(request.output_format).format_verification(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def run(request: CommandRequest) -> int:
    """Executes a validated request, printing results to stdout."""
    ValidationService().validate(request)
    if request.cap is not None:
        Config.override(enumerationCap=request.cap)
    config = Config.get_config()
    engine = CharPolyEngine(config)

    if request.subcommand == 'verify':
        return run_verify(request, config)
    if request.subcommand == 'charpoly':
        output = run_finite(request, engine, config, modified=False)
    elif request.subcommand == 'modified':
        output = run_finite(request, engine, config, modified=True)
    elif request.subcommand == 'affine':
        output = run_affine(request, engine)
    elif request.subcommand == 'descent-class':
        output = run_descent_class(request, engine, config)
    elif request.subcommand == 'alt':
        output = run_alt(request, engine, config)
    else:
        output = run_series(request)
    print(output)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(request_from_args(args))
    except WeakOrderError as e:
        print(f"error: {e.code}: {e.message}", file=sys.stderr)
        return EXIT_USAGE if isinstance(e, UsageError) else EXIT_FAILED
    except ValueError as e:
        # configuration errors
        print(f"error: config: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
