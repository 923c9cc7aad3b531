#!/usr/bin/env python3
"""
archgroups - Main Script
Command-line front end for exact Archimedean ordered group computations:
symbols, subgroups of R, type orders, Holder cuts, classification deciders,
invariant fragments, GL2(Z) actions, colored orders and ODAGs, circular
orders with the Zeleva extension, and Hahn series.
"""

import sys
import json
import shlex
import logging
import argparse

import config
from config import VERSION
from errors import INTERNAL_ERROR_EXIT, ArchGroupsError, ContractViolation, ParseError
from expr_parser import (
    parse_characteristic_map,
    parse_expression,
    parse_expression_list,
    parse_integer,
    parse_rational,
    split_top_level,
    strip_brackets,
)
from session import Session
from symreal import Mode
from zmodule import SpanMode, Subgroup
from archgroup import OrderedVectorGroup, TypeVector, holder_cut, order_from_type
from classify import (
    Decision,
    Direction,
    PointedGroup,
    Rank1Characteristic,
    Verdict,
    countable_set_to_field,
    decide_family,
    emit_invariant,
    invariant_embed,
    invariant_equal,
    unit_span_parameter,
)
from reductions import (
    GL2ZMatrix,
    clo_embed_bruteforce,
    clo_to_odag,
    gl2_apply,
    parse_clo,
    structured_embed_search,
)
from circular import (
    CircleElem,
    ZelevaElem,
    cocycle,
    decide_circle_iso,
    separation_witness,
    zeleva_compare,
    zeleva_mul,
    zeleva_pow,
)
from hahn import format_series, hahn_compare, hahn_mul, leading_coefficient, parse_series, valuation

logger = logging.getLogger('archgroups.main')


def setup_logging():
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


class CommandParser(argparse.ArgumentParser):
    """argparse that raises ParseError instead of exiting"""

    def error(self, message):
        raise ParseError(message)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help='JSON report on stdout')
    common.add_argument('--height', type=int, default=argparse.SUPPRESS, help='bounded-search height')
    common.add_argument('--eps', default=argparse.SUPPRESS, help='approximation width, e.g. 1/1048576')
    common.add_argument('--cap', type=int, default=argparse.SUPPRESS, help='separating-power cap')
    common.add_argument('--refine-cap', type=int, default=argparse.SUPPRESS, help='refinement round cap')
    common.add_argument('--session', default=argparse.SUPPRESS, help='session script file')

    parser = CommandParser(prog='archgroups', description='Exact Archimedean ordered groups', parents=[common])
    commands = parser.add_subparsers(dest='command', parser_class=CommandParser)
    commands.required = True

    def add(parent, name, **kwargs):
        return parent.add_parser(name, parents=[common], **kwargs)

    p = add(commands, 'sym', help='declare a symbol')
    p.add_argument('name')
    p.add_argument('mode', choices=[m.value for m in Mode])
    p.add_argument('binding', help='decimal:<digits> | rat:<p>/<q> | const:<name>')

    p = add(commands, 'group', help='build a subgroup of R')
    p.add_argument('mode', choices=[m.value for m in SpanMode])
    p.add_argument('generators', help='[g1, g2, ...]')
    p.add_argument('--name')

    p = add(commands, 'type', help='type vectors')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'new')
    q.add_argument('entries', help='[1, a2, ...]')
    q.add_argument('--name')

    p = add(commands, 'order', help='compare under a type order')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'cmp')
    q.add_argument('type')
    q.add_argument('x')
    q.add_argument('y')

    p = add(commands, 'holder', help='Holder cut of an element of Q^n')
    p.add_argument('type')
    p.add_argument('t')

    p = add(commands, 'decide', help='isomorphism / embeddability deciders')
    p.add_argument('direction', choices=[d.value for d in Direction])
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('--family', choices=['pointed', 'rank1', 'unit-span', 'field', 'circle'])
    p.add_argument('--point-a')
    p.add_argument('--point-b')

    p = add(commands, 'invariant', help='invariant fragments')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'emit')
    q.add_argument('group')
    q.add_argument('--out')

    p = add(commands, 'gl2', help='GL2(Z) fractional linear action')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'apply')
    for entry in 'abcd':
        q.add_argument(entry)
    q.add_argument('x')

    p = add(commands, 'clo', help='colored linear orders')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'new')
    q.add_argument('--order', required=True, help='positions from least to greatest, e.g. 0<1<2')
    q.add_argument('--colors', required=True, help='color per position, e.g. 0,1,0')
    q.add_argument('--name')
    q = add(actions, 'embed')
    q.add_argument('source')
    q.add_argument('target')

    p = add(commands, 'odag', help='ordered divisible abelian groups of colored orders')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'cmp')
    q.add_argument('order')
    q.add_argument('f')
    q.add_argument('g')

    p = add(commands, 'circ', help='circular orders')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'cocycle')
    q.add_argument('angles', nargs=3)
    q = add(actions, 'separate')
    q.add_argument('alpha')
    q.add_argument('beta')

    p = add(commands, 'zeleva', help='Zeleva extension arithmetic')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    for name in ('mul', 'cmp'):
        q = add(actions, name)
        q.add_argument('p', help='"theta,n"')
        q.add_argument('q', help='"theta,n"')
    q = add(actions, 'pow')
    q.add_argument('p', help='"theta,n"')
    q.add_argument('k')

    p = add(commands, 'hahn', help='Hahn series')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    q = add(actions, 'eval')
    q.add_argument('series')
    q.add_argument('--group', required=True, help='type vector or colored order')
    q.add_argument('--name')
    for name in ('mul', 'cmp'):
        q = add(actions, name)
        q.add_argument('f')
        q.add_argument('g')
        q.add_argument('--group', required=True)

    p = add(commands, 'session', help='session script')
    actions = p.add_subparsers(dest='action', parser_class=CommandParser)
    actions.required = True
    add(actions, 'show')

    return parser


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def cmd_sym(session, args):
    session.registry.declare(args.name, Mode(args.mode), args.binding)
    line = session.registry.get(args.name).declaration_line()
    session.record(shlex.split(line))
    return {'symbol': args.name, 'declaration': line}


def _group_words(group, name):
    return ['group', group.span_mode.value, f"[{', '.join(g.to_text() for g in group.generators)}]", '--name', name]


def cmd_group(session, args):
    group = Subgroup(parse_expression_list(args.generators, session.registry), SpanMode(args.mode))
    if args.name:
        session.store(args.name, 'group', group, _group_words(group, args.name))
    return {
        'span_mode': group.span_mode.value,
        'basis': [b.to_text() for b in group.basis()],
        'rank': group.rank(),
    }


def cmd_type(session, args):
    vector = TypeVector(parse_expression_list(args.entries, session.registry))
    if args.name:
        session.store(args.name, 'type', vector, ['type', 'new', vector.to_text(), '--name', args.name])
    return {'type': [e.to_text() for e in vector.entries], 'rank': vector.rank}


def _rational_vector(text):
    body = strip_brackets(text)
    return tuple(parse_rational(p) for p in split_top_level(body))


def cmd_order(session, args):
    vector = session.resolve_type(args.type)
    result = order_from_type(vector, _rational_vector(args.x), _rational_vector(args.y))
    return {'result': result}


def cmd_holder(session, args):
    group = OrderedVectorGroup(session.resolve_type(args.type))
    t = group.parse_element(args.t)
    e1 = group.parse_element(','.join(['1'] + ['0'] * (group.rank - 1)))
    u = e1 if group.compare(e1, group.zero()) > 0 else group.neg(e1)
    lo, hi = holder_cut(group, u, t, config.settings.eps)
    return {'interval': [str(lo), str(hi)], 'unit': group.format_element(u), 'eps': str(config.settings.eps)}


def _alpha(session, token):
    entry = session.objects.get(token)
    if entry is not None or token.split(' ', 1)[0] in ('q', 'z'):
        group = session.resolve_group(token)
        alpha = unit_span_parameter(group)
        if alpha is None:
            raise ContractViolation(f"{token!r} is not of the form span_Q{{1, alpha}}")
        return alpha
    return parse_expression(token, session.registry)


def _symbol_list(session, text):
    names = [n for n in split_top_level(strip_brackets(text)) if n]
    return countable_set_to_field(session.registry, names)


def cmd_decide(session, args):
    direction = Direction(args.direction)
    height = config.settings.search_height
    family = args.family
    if family is None:
        G, H = session.resolve_group(args.left), session.resolve_group(args.right)
        verdict = invariant_equal(G, H, height) if direction is Direction.ISO else invariant_embed(G, H, height)
    elif family == 'pointed':
        if args.point_a is None or args.point_b is None:
            raise ParseError("--family pointed needs --point-a and --point-b")
        A = PointedGroup(session.resolve_group(args.left), parse_expression(args.point_a, session.registry))
        B = PointedGroup(session.resolve_group(args.right), parse_expression(args.point_b, session.registry))
        verdict = decide_family('pointed', A, B, direction)
    elif family == 'rank1':
        c1 = Rank1Characteristic(parse_characteristic_map(args.left))
        c2 = Rank1Characteristic(parse_characteristic_map(args.right))
        verdict = decide_family('rank1', c1, c2, direction)
    elif family == 'unit-span':
        verdict = decide_family('unit-span', _alpha(session, args.left), _alpha(session, args.right), direction)
    elif family == 'field':
        verdict = decide_family('field', _symbol_list(session, args.left), _symbol_list(session, args.right), direction)
    else:
        if direction is not Direction.ISO:
            raise ContractViolation("Circle subgroups support iso only")
        left = [CircleElem(a) for a in parse_expression_list(args.left, session.registry)]
        right = [CircleElem(a) for a in parse_expression_list(args.right, session.registry)]
        same = decide_circle_iso(left, right)
        verdict = Verdict(Decision.YES if same else Decision.NO, 'exact:circle')
    report = verdict.as_dict()
    report['status'] = verdict.answer.value
    return report


def cmd_invariant(session, args):
    group = session.resolve_group(args.group)
    height = config.settings.search_height
    fragment = emit_invariant(group, height)
    report = {'height': height, 'slices': len(fragment.slices), 'triples': len(fragment.triples)}
    text = fragment.to_text()
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
        report['out'] = args.out
    else:
        report['fragment'] = text.splitlines()
    return report


def cmd_gl2(session, args):
    M = GL2ZMatrix(*(parse_integer(getattr(args, e)) for e in 'abcd'))
    x = parse_expression(args.x, session.registry)
    return {'result': gl2_apply(M, x).to_text(), 'det': M.det}


def cmd_clo(session, args):
    if args.action == 'new':
        order = parse_clo(args.order, args.colors)
        if args.name:
            words = ['clo', 'new', '--order', args.order, '--colors', args.colors, '--name', args.name]
            session.store(args.name, 'clo', order, words)
        return {'ranks': list(order.ranks), 'colors': list(order.colors)}

    K, L = session.resolve_clo(args.source), session.resolve_clo(args.target)
    injection = clo_embed_bruteforce(K, L)
    embedding = structured_embed_search(clo_to_odag(K, session.registry), clo_to_odag(L, session.registry))
    report = {
        'status': 'yes' if injection is not None else 'no',
        'injection': list(injection) if injection is not None else None,
        'group_embedding': embedding.as_dict() if embedding is not None else None,
    }
    if (injection is None) != (embedding is None):
        logger.error("Colored-order and group embedding searches disagree")
        raise ContractViolation("Colored-order and group embedding searches disagree")
    return report


def cmd_odag(session, args):
    G = clo_to_odag(session.resolve_clo(args.order), session.registry)
    return {'result': G.compare(G.parse_element(args.f), G.parse_element(args.g))}


def _circle(session, text):
    return CircleElem(parse_expression(text, session.registry))


def cmd_circ(session, args):
    if args.action == 'cocycle':
        x, y, z = (_circle(session, a) for a in args.angles)
        return {'result': cocycle(x, y, z)}
    alpha = parse_expression(args.alpha, session.registry)
    beta = parse_expression(args.beta, session.registry)
    witness = separation_witness(alpha, beta, config.settings.separation_cap)
    if witness is None:
        return {'status': 'unknown', 'cap': config.settings.separation_cap}
    report = witness.as_dict()
    report['status'] = 'yes'
    return report


def _zeleva(session, text):
    parts = split_top_level(strip_brackets(text))
    if len(parts) != 2:
        raise ParseError(f"Zeleva element must be 'theta,n': {text!r}")
    return ZelevaElem(_circle(session, parts[0]), parse_integer(parts[1]))


def cmd_zeleva(session, args):
    p = _zeleva(session, args.p)
    if args.action == 'pow':
        return {'result': zeleva_pow(p, parse_integer(args.k)).to_text()}
    q = _zeleva(session, args.q)
    if args.action == 'mul':
        return {'result': zeleva_mul(p, q).to_text()}
    return {'result': zeleva_compare(p, q)}


def _series(session, group, token):
    stored = session.lookup(token, 'series')
    if stored is not None:
        if stored.group != group:
            raise ContractViolation(f"Series {token!r} lives over another exponent group")
        return stored
    return parse_series(token, group)


def cmd_hahn(session, args):
    group = session.exponent_group(args.group)
    if args.action == 'eval':
        f = parse_series(args.series, group)
        if args.name:
            words = ['hahn', 'eval', '--group', args.group, '--name', args.name, '--', format_series(f)]
            session.store(args.name, 'series', f, words)
        report = {'series': format_series(f)}
        if not f.is_zero():
            report['valuation'] = group.format_element(valuation(f))
            report['sign'] = 1 if leading_coefficient(f) > 0 else -1
        else:
            report['sign'] = 0
        return report
    f, g = _series(session, group, args.f), _series(session, group, args.g)
    if args.action == 'mul':
        return {'result': format_series(hahn_mul(f, g))}
    return {'result': hahn_compare(f, g)}


def cmd_session(session, args):
    return {'lines': session.declaration_lines()}


HANDLERS = {
    'sym': cmd_sym,
    'group': cmd_group,
    'type': cmd_type,
    'order': cmd_order,
    'holder': cmd_holder,
    'decide': cmd_decide,
    'invariant': cmd_invariant,
    'gl2': cmd_gl2,
    'clo': cmd_clo,
    'odag': cmd_odag,
    'circ': cmd_circ,
    'zeleva': cmd_zeleva,
    'hahn': cmd_hahn,
    'session': cmd_session,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def apply_settings(args):
    eps = parse_rational(args.eps) if hasattr(args, 'eps') else None
    if eps is not None and eps <= 0:
        raise ContractViolation("--eps must be positive")
    config.settings = config.Settings(
        refine_cap=getattr(args, 'refine_cap', None),
        search_height=getattr(args, 'height', None),
        eps=eps,
        separation_cap=getattr(args, 'cap', None),
    )


def execute(session, args):
    report = {'status': 'ok'}
    report.update(HANDLERS[args.command](session, args))
    command = args.command
    if getattr(args, 'action', None):
        command += f" {args.action}"
    report['command'] = command
    report['version'] = VERSION
    return report


def render(report, as_json):
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []
    for key, value in report.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return '\n'.join(lines)


def run(argv):
    """Execute one command line; returns (exit code, report)"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        apply_settings(args)
        session = Session(getattr(args, 'session', None), refine_cap=config.settings.refine_cap)
        session.load(lambda line: execute(session, parser.parse_args(shlex.split(line))))
        report = execute(session, args)
        return 0, report
    except ArchGroupsError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        return e.exit_code, {'status': 'error', 'error': type(e).__name__, 'message': str(e), 'version': VERSION}
    except Exception as e:
        logger.exception(f"Internal error: {str(e)}")
        return INTERNAL_ERROR_EXIT, {'status': 'error', 'error': 'InternalError', 'message': str(e), 'version': VERSION}


def main(argv=None):
    """Main function"""
    setup_logging()
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report = run(argv)
    print(render(report, '--json' in argv))
    return code


if __name__ == "__main__":
    sys.exit(main())
