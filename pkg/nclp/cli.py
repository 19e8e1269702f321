#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# command line front end, reports go to stdout (or --output), diagnostics to stderr

import sys, os, io, csv, argparse
import numpy

from nclp import pyjson, config, values, version
from nclp.matcore import *
from nclp.normlib import *
from nclp import interp, spaces, copies, suites

class UsageError(Exception):
    pass

verify_checks = ['amplified', 'boundary-pairing', 'graph-tensor', 'oh-graph', 'quotient', 'rc-couples',
                 'rc-isometry', 'sign-symmetry', 'stable']

def _no_debug(*args):
    pass

def _stderr_debug(*args):
    print(*args, file=sys.stderr)

def exponent(text):
    try:
        return pyjson.exponent_from_json(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))

def common_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('--input', help='json input file, - for stdin')
    common.add_argument('--seed', type=int)
    common.add_argument('--tol', type=float)
    common.add_argument('--jobs', type=int)
    common.add_argument('--format', choices=['json', 'csv'])
    common.add_argument('--output', help='report file, stdout by default')
    common.add_argument('-v', '--verbose', action='store_true')
    return common

def build_parser():
    common = common_parser()
    parser = argparse.ArgumentParser(prog='nclp', parents=[common],
                                     description='noncommutative L_p norms at finite dimension')
    parser.add_argument('--version', action='version', version='nclp ' + version.strversion)
    sub = parser.add_subparsers(dest='command', required=True)

    norm = sub.add_parser('norm', parents=[common], conflict_handler='resolve', help='compute one norm of the input matrix')
    kind = norm.add_mutually_exclusive_group(required=True)
    for name in ['schatten', 'state', 'weighted', 'factorization', 'conditional', 'oh', 'mixed', 'row', 'column', 'square', 'interpolated']:
        kind.add_argument('--' + name, dest='kind', action='store_const', const=name)
    norm.add_argument('-p', type=exponent, default=2.0)
    norm.add_argument('-u', type=exponent, default=inf)
    norm.add_argument('-v', dest='v_exponent', type=exponent, default=inf)
    norm.add_argument('--theta', type=float, default=0.5)
    norm.add_argument('--p1', type=exponent, default=4.0, help='second exponent of the --interpolated couple')
    norm.add_argument('--level', type=int, default=1, help='m of the subalgebra M_m (x) 1')
    norm.add_argument('--placement', choices=placements, default='symmetric')
    norm.add_argument('--side', choices=['row', 'column'], default='row', help='side of the --square function')
    norm.add_argument('--diag', help='comma separated diagonal, instead of --input')
    norm.add_argument('--density', help='comma separated diagonal density, instead of the input density')

    verify = sub.add_parser('verify', parents=[common], help='run one verification check')
    verify.add_argument('check', choices=verify_checks)
    verify.add_argument('--n', type=int, default=3)
    verify.add_argument('--m', type=int, default=1)
    verify.add_argument('--k', type=int, default=2)
    verify.add_argument('-p', type=exponent, default=1.5)
    verify.add_argument('--samples', type=int, default=4)

    rosenthal = sub.add_parser('rosenthal', parents=[common], help='rosenthal type inequalities')
    rosenthal.add_argument('--dist', choices=copies.distributions, help='classical monte carlo instead of copies')
    rosenthal.add_argument('--n', type=int, default=4)
    rosenthal.add_argument('--k', type=int, default=2)
    rosenthal.add_argument('-p', type=exponent, default=2.0)
    rosenthal.add_argument('-q', type=exponent, default=2.0)
    rosenthal.add_argument('--samples', type=int, default=10000)

    moments = sub.add_parser('moments', parents=[common], help='central limit moments against simulation')
    moments.add_argument('--m', type=int, default=4)
    moments.add_argument('--s', type=int, default=3)
    moments.add_argument('--n', type=int, default=2, help='base dimension')
    moments.add_argument('--mass', type=float, default=1.0)

    budget = sub.add_parser('budget', parents=[common], help='dimension budget')
    budget.add_argument('--m', type=int, default=8)
    budget.add_argument('--alpha', type=float, default=1.0)
    budget.add_argument('--beta', type=float, default=1.0)
    budget.add_argument('--gamma', type=float, default=1.0)

    suite = sub.add_parser('suite', parents=[common], help='run verification suites')
    suite.add_argument('name', help='one of %s or all' % ', '.join(suites.names()))

    conf = sub.add_parser('config', parents=[common], help='store defaults, name=value')
    conf.add_argument('settings', nargs='*')
    return parser

def load_input(path):
    if not path:
        raise UsageError('this command needs --input')
    try:
        if path == '-':
            text = sys.stdin.read()
        else:
            with open(path) as f:
                text = f.read()
        data = pyjson.loads(text)
    except (OSError, ValueError) as e:
        raise UsageError('cannot read %s: %s' % (path, e))
    if not isinstance(data, dict):
        raise UsageError('input must be a json object')
    return data

def _diagonal(text):
    try:
        return numpy.diag([float(v) for v in text.split(',')])
    except ValueError as e:
        raise UsageError('bad diagonal %r: %s' % (text, e))

def norm_inputs(args, cfg):
    data = {}
    if args.diag is None or (args.density is None and args.kind not in ('schatten', 'factorization', 'oh')):
        if cfg.input.value:
            data = load_input(cfg.input.value)
    try:
        if args.diag is not None:
            x = _diagonal(args.diag)
        elif 'x' in data:
            x = pyjson.matrix_from_json(data['x'])
        else:
            raise UsageError('no matrix given, use --diag or an input with "x"')
        xs = [pyjson.matrix_from_json(m) for m in data.get('xs', [])] or [x]
        d = None
        if args.density is not None:
            d = Density(_diagonal(args.density))
        elif 'density' in data:
            d = Density(pyjson.matrix_from_json(data['density']), data.get('mass'))
    except ValueError as e:
        raise UsageError(str(e))
    return x, xs, d

def run_norm(args, cfg, debug):
    x, xs, d = norm_inputs(args, cfg)
    seed = cfg.seed.value
    kind = args.kind
    p, u, v = args.p, args.u, args.v_exponent
    needs_density = kind in ('state', 'weighted', 'conditional', 'row', 'column', 'square', 'interpolated')
    if needs_density and d is None:
        raise UsageError('--%s needs a density' % kind)

    report = {'kind': kind}
    if kind == 'schatten':
        report['value'] = schatten_norm(x, p)
    elif kind == 'state':
        report['value'] = state_lp_norm(x, d, p)
    elif kind == 'weighted':
        report['value'] = weighted_lp_norm(x, d, p, args.placement)
    elif kind == 'factorization':
        report.update(factorization_norm(x, u, v, tol=cfg.tol.value, debug=debug).as_dict())
    elif kind == 'conditional':
        spec = NormSpec(p=p, u=u, v=v, density=d, subalgebra=SubalgebraSpec(args.level))
        report.update(conditional_lp_norm(x, spec, seed=seed, debug=debug).as_dict())
        report['spec'] = spec.to_json()
    elif kind == 'oh':
        report.update(oh_valued_norm(xs, d=d, p=p, seed=seed, debug=debug).as_dict())
    elif kind == 'mixed':
        report.update(mixed_theta_norm(xs, args.theta, p, d=d, seed=seed, debug=debug).as_dict())
    elif kind == 'row':
        report['value'] = row_norm(x, d, p, args.level)
    elif kind == 'column':
        report['value'] = column_norm(x, d, p, args.level)
    elif kind == 'square':
        report['value'] = rc_square_norm(xs, d, p, args.side)
        report['side'] = args.side
    elif kind == 'interpolated':
        couple = interp.lp_couple(p, args.p1, args.theta)
        report['couple'] = couple.to_json()
        report['value'] = interp.couple_norm_closed(x, couple, d)
        report['constant_bound'] = interp.competitor_upper_bound(x, couple, d)
        report['power_bound'] = interp.competitor_upper_bound(x, couple, d, family='power', grid=cfg.grid.value)
    return report, True

def check_sizes(args):
    for name in ('n', 'm', 'k', 'samples'):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise UsageError('--%s must be at least 1, got %d' % (name, value))

def run_verify(args, cfg, debug):
    check_sizes(args)
    seed = cfg.seed.value
    rng = named_stream(seed, 'verify-' + args.check)
    if args.check == 'graph-tensor':
        lambdas = rng.uniform(0.5, 2.0, args.n)
        report = spaces.graph_tensor_check(lambdas, m=args.m, samples=args.samples, seed=seed)
    elif args.check == 'oh-graph':
        report = spaces.oh_graph_map(2.0 ** numpy.arange(1, args.n + 1), m=args.m, seed=seed)
    elif args.check == 'quotient':
        weight = spaces.DiagonalWeight(rng.uniform(0.5, 2.0, args.n), args.p)
        d = weight.density()
        xs = [random_matrix(args.n, args.n, rng) for i in range(4)]
        direct = spaces.k_quotient_norm(xs, d, args.p, seed=seed, debug=debug)
        via_sum = spaces.k_quotient_sum_norm(xs, d, args.p, seed=seed, debug=debug)
        agree = abs(direct.value - via_sum.value) <= cfg.rtol.value * direct.value
        report = {'direct': direct.as_dict(), 'sum': via_sum.as_dict(), 'weight': weight.to_json(),
                  'passed': agree and direct.converged and via_sum.converged}
    elif args.check == 'rc-couples':
        d = random_state(args.n, rng)
        x = random_matrix(args.m * args.n, args.m * args.n, rng)
        rows = []
        for kind in sorted(interp.rc_kinds):
            for p in (4.0, 8.0, inf):
                for theta in (0.25, 0.5, 0.75):
                    rows.append(interp.rc_couple_check(x, kind, p, theta, d, seed=seed, tol=cfg.rtol.value))
        report = {'rows': rows, 'passed': all(row['passed'] for row in rows)}
    elif args.check == 'rc-isometry':
        d = random_state(args.n, rng)
        a = random_matrix(args.m * args.n, args.m * args.n, rng)
        rows = [spaces.rc_isometry_check(a, d, args.p, args.m, side) for side in ('row', 'column')]
        report = {'rows': rows, 'passed': all(row['passed'] for row in rows)}
    elif args.check == 'amplified':
        d = random_state(args.n, rng)
        x = random_matrix(args.m * args.n, args.m * args.n, rng)
        report = spaces.amplified_isometry_check(x, d, args.m, seed=seed, tol=cfg.rtol.value)
    elif args.check == 'boundary-pairing':
        d = Density.diagonal(rng.uniform(0.3, 1.0, args.n)).state()
        y = random_matrix(args.n, args.n, rng)
        rows = [interp.boundary_pairing_check(y, d, 0.5, args.p, side, grid=cfg.grid.value) for side in ('row', 'column')]
        report = {'rows': rows, 'passed': all(row['passed'] for row in rows)}
    elif args.check == 'stable':
        q = min(max(args.p, 1.1), 2.0)
        report = copies.stable_embedding_mc(rng.standard_normal(args.n), q, samples=max(args.samples, 10000), seed=seed)
        report['passed'] = abs(report['ratio'] - 1) <= 0.1
    else:
        system = copies.CopySystem(random_state(args.n, rng), args.k, cap=cfg.cap.value)
        report = copies.sign_symmetry_check(random_matrix(args.n, args.n, rng), system, args.p)
    return report, report['passed']

def run_rosenthal(args, cfg, debug):
    check_sizes(args)
    seed = cfg.seed.value
    if args.dist:
        report = copies.rosenthal_classical_mc(args.dist, args.n, args.p, args.q, args.samples, seed)
        return report, True
    rng = named_stream(seed, 'rosenthal-copies')
    if cfg.input.value:
        try:
            x = pyjson.matrix_from_json(load_input(cfg.input.value)['x'])
        except (KeyError, ValueError) as e:
            raise UsageError('input needs a matrix "x": %s' % e)
        d = Density.uniform(x.shape[0])
    else:
        d = random_state(args.n, rng)
        x = random_matrix(args.n, args.n, rng)
    system = copies.CopySystem(d, args.k, cap=cfg.cap.value)
    report = copies.rosenthal_bound_check(x, system, args.p, args.q, seed=seed, tol=cfg.rtol.value, debug=debug)
    return report, True

def run_moments(args, cfg, debug):
    check_sizes(args)
    rng = named_stream(cfg.seed.value, 'moments')
    d = Density(random_state(args.n, rng).matrix * args.mass, args.mass)
    xs = [hermitian_part(random_matrix(args.n, args.n, rng)) for i in range(args.m)]
    finite = copies.clt_moment_finite_s(xs, d, args.s)
    simulated = copies.simulate_clt_moment(xs, d, args.s)
    report = {'m': args.m, 's': args.s, 'finite_s': finite, 'simulated': simulated,
              'limit': copies.clt_moment_limit(xs, d), 'poisson': copies.poisson_moment(xs, d),
              'difference': abs(finite - simulated),
              'rate': copies.clt_rate(xs, d, [s for s in (1, 2, 4, 8, 16) if s >= args.mass])}
    report['passed'] = report['difference'] <= 1e-10 * max(1.0, abs(finite))
    return report, report['passed']

def run_budget(args, cfg, debug):
    return spaces.dimension_budget(args.m, args.alpha, args.beta, args.gamma), True

def run_suite(args, cfg, debug):
    seed, tol, jobs = cfg.seed.value, cfg.tol.value, cfg.jobs.value
    if args.name == 'all':
        reports = [suite.run(seed, tol, jobs) for suite in sorted(suites.default, key=lambda s: s.name)]
        report = {'suite': 'all', 'seed': seed, 'suites': reports,
                  'passed': all(r['passed'] for r in reports)}
    else:
        try:
            suite = suites.find(args.name)
        except ValueError as e:
            raise UsageError(str(e))
        report = suite.run(seed, tol, jobs)
    for failed in failed_checks(report):
        print('ERROR check failed:', failed, file=sys.stderr)
    return report, report['passed']

def failed_checks(report):
    for r in report.get('suites', [report]):
        for row in r.get('checks', []):
            if not row['passed']:
                yield row['check']

def run_config(args, cfg, debug):
    for setting in args.settings:
        if not '=' in setting:
            raise UsageError('settings are name=value, got ' + setting)
        name, value = setting.split('=', 1)
        value = value.strip()
        try:
            value = pyjson.loads(value)
        except ValueError:
            pass
        if not name in cfg.values or not cfg.values[name].persistent():
            raise UsageError('unknown setting ' + name)
        if not cfg.set(name, value):
            raise UsageError('invalid value for ' + name)
    path = config.store(cfg)
    return {'path': path, 'settings': dict((v.name, pyjson.to_plain(v.value)) for v in cfg.persistent_values())}, True

commands = {'norm': run_norm, 'verify': run_verify, 'rosenthal': run_rosenthal,
            'moments': run_moments, 'budget': run_budget, 'suite': run_suite, 'config': run_config}

def flatten(data, prefix=''):
    row = {}
    for key in sorted(data):
        value = data[key]
        name = prefix + str(key)
        if isinstance(value, dict):
            row.update(flatten(value, name + '.'))
        elif isinstance(value, list):
            row[name] = pyjson.dumps(value)
        else:
            row[name] = value
    return row

def csv_rows(report):
    for key in ('suites', 'checks', 'rows', 'samples', 'patterns'):
        if isinstance(report.get(key), list):
            rows = []
            for item in report[key]:
                rows.extend(csv_rows(item) if key == 'suites' else [flatten(item)])
            return rows
    return [flatten(report)]

def format_report(report, fmt):
    report = pyjson.to_plain(report)
    if fmt == 'json':
        return pyjson.dumps(report, indent=2) + '\n'
    rows = csv_rows(report)
    fields = sorted(set(name for row in rows for name in row))
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()

def apply_flags(cfg, args):
    for name in ['input', 'seed', 'tol', 'jobs', 'format', 'output', 'verbose']:
        value = getattr(args, name, None)
        if value is not None and not cfg.set(name, value):
            raise UsageError('invalid --%s %s' % (name, value))
    cfg.command.set(args.command)

def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    cfg = values.RunConfig()
    config.load(cfg)
    try:
        apply_flags(cfg, args)
        debug = _stderr_debug if cfg.verbose.value else _no_debug
        report, passed = commands[args.command](args, cfg, debug)
    except UsageError as e:
        print('nclp: error:', e, file=sys.stderr)
        return 2
    except ValueError as e:
        print('nclp: error:', e, file=sys.stderr)
        return 2

    text = format_report(report, cfg.format.value)
    if cfg.output.value:
        with open(cfg.output.value, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if not passed:
        print('nclp: invariant failed:', args.command, getattr(args, 'check', getattr(args, 'name', '')), file=sys.stderr)
        return 1
    return 0

def main():
    sys.exit(run())

if __name__ == '__main__':
    main()
