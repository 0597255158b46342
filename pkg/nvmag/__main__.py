# -*- coding: utf-8 -*-
'''
    nvmag
    ~~~~~

    Command line front end::

        python -m nvmag simulate --config campaign.xml --seed 7 --out run
        python -m nvmag fit run/*.csv --out run
        python -m nvmag reconstruct run/fit.xml --hint toward --out run
        python -m nvmag wiremap --config campaign.xml --out run
        python -m nvmag sensitivity run/fit.xml --out run

    Exit status: 0 on success, 2 for invalid input, 3 for numerical
    failures, 4 for I/O errors.

    :copyright: 2020, nvmag contributors

    :license: FreeBSD and LGPL, see license.* for more details.
'''

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

import nvmag.version
from nvmag.config import FIT_E, RunConfig, load_config
from nvmag.errors import (ConvergenceError, NumericalError, NvmagError,
                          ValidationError)
from nvmag.ext.fit import FAILED, fit_status, read_fit, read_pairs
from nvmag.fit import fit_lorentzians, initial_centers, pair_dips
from nvmag.inversion import (HINTS, crystal_to_lab, lab_to_crystal,
                             reconstruct_vector, vector_difference)
from nvmag.metrics import (SensitivityInputs, ensemble_scale,
                           linewidth_from_t2star)
from nvmag.report import ReportGenerator, load_report
from nvmag.sources import (field_map, footprint_spread, wire_field,
                           write_field_map_csv)
from nvmag.spectrum import read_spectrum_csv, write_spectrum_csv
from nvmag.spin import (CRYSTAL, PoissonNoise, SpinParams, odmr_spectrum,
                        resonance_lines)

log = logging.getLogger('nvmag')

EXIT_IO = 4

MANIFEST = 'manifest.xml'
FIT_REPORT = 'fit.xml'
RECONSTRUCTION_REPORT = 'reconstruction.xml'
FIELD_MAP = 'fieldmap.csv'
SENSITIVITY_REPORT = 'sensitivity.xml'


def _run_jobs(func, items, jobs):
    '''Map `func` over `items`, concurrently for jobs > 1. Results keep the
    order of `items`.
    '''
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _out_path(cfg, name):
    out = cfg.output()['dir']
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


def _write_report(cfg, rg, name):
    filename = _out_path(cfg, name)
    rg.report_file(filename, pretty=cfg.output()['pretty'])
    log.info('Wrote %s', filename)
    return filename


def _new_report(command, cfg):
    rg = ReportGenerator()
    rg.command(command)
    rg.parameter(name='seed', value=cfg.noise()['seed'])
    return rg


def _lab_bias(cfg, geom):
    bias = cfg.bias_field()
    psi = cfg.reconstruction()['polarization_reference_deg']
    if bias.frame == CRYSTAL:
        return crystal_to_lab(bias, geom, psi)
    return bias


def cmd_simulate(cfg, jobs=1):
    '''Write one spectrum CSV per probe and current plus the manifest.
    Every file draws its noise from its own child of the configured seed.
    '''
    geom = cfg.crystal_geometry()
    params = cfg.spin_params()
    line = cfg.line_shape()
    freqs = cfg.scan_grid()
    noise = cfg.noise()
    psi = cfg.reconstruction()['polarization_reference_deg']
    bias = _lab_bias(cfg, geom)
    probes = cfg.probe() or [{'name': 'p0', 'x_m': 0.0, 'y_m': 0.0,
                              'z_m': 0.0}]
    currents = [c['value_a'] for c in cfg.current()] or [0.0]

    jobs_list = []
    for probe in probes:
        for k, current in enumerate(currents):
            jobs_list.append((probe, k, current))
    seeds = np.random.SeedSequence(noise['seed']).spawn(len(jobs_list))

    def simulate(item):
        (probe, k, current), seed = item
        position = (probe['x_m'], probe['y_m'], probe['z_m'])
        b_lab = bias
        if current != 0:
            b_lab = bias + wire_field(cfg.wire_source(current), position)
        b_crystal = lab_to_crystal(b_lab, geom, psi)
        pn = PoissonNoise(seed, noise['integration_s']) \
            if noise['enabled'] else None
        spec = odmr_spectrum(b_crystal, geom, params, line, freqs, pn)
        name = '%s_i%03d' % (probe['name'], k)
        write_spectrum_csv(spec, _out_path(cfg, name + '.csv'))
        return name, probe, current, position, b_lab, b_crystal

    results = _run_jobs(simulate, zip(jobs_list, seeds), jobs)

    rg = _new_report('simulate', cfg)
    rg.load_extension('truth')
    rg.truth.seed(noise['seed'])
    rg.truth.spin(params)
    for name, probe, current, position, b_lab, b_crystal in results:
        rec = rg.add_record()
        rec.id(name)
        rec.source(name + '.csv')
        rec.probe(probe['name'])
        rec.current(current)
        rec.truth.position(position)
        rec.truth.field(b_lab, b_crystal)
        rec.truth.pairs(resonance_lines(b_crystal, geom, params))
    log.info('Simulated %d spectra', len(results))
    return _write_report(cfg, rg, MANIFEST)


def _manifest_records(dirname, cache):
    if dirname not in cache:
        cache[dirname] = {}
        path = os.path.join(dirname, MANIFEST)
        if os.path.exists(path):
            for r in load_report(path, 'simulate').records:
                cache[dirname][r.id] = r
    return cache[dirname]


def cmd_fit(cfg, files, allow_partial=False, jobs=1):
    '''Fit every spectrum file and write the fit report. Probe and
    current are copied from a manifest next to the spectrum file.
    '''
    if not files:
        raise ValidationError('No spectrum files given')
    settings = cfg.fit()
    params = cfg.spin_params()

    def fit(filename):
        spec = read_spectrum_csv(filename)
        init = initial_centers(spec, settings['n_dips'],
                               settings['min_prominence'], filename)
        try:
            report = fit_lorentzians(spec, settings['n_dips'], init=init,
                                     weights=settings['weights'],
                                     max_iterations=settings['max_iterations'])
        except NumericalError as e:
            return filename, None, [], e
        if not report.converged:
            return filename, report, [], ConvergenceError(
                    'Fit of %s did not converge (%s)'
                    % (filename, report.message), report)
        pairs = []
        if settings['n_dips'] % 2 == 0:
            pairs = pair_dips(report.dips, params.d_hz,
                              settings['pair_tolerance_hz'])
        return filename, report, pairs, None

    results = _run_jobs(fit, files, jobs)

    rg = _new_report('fit', cfg)
    rg.load_extension('fit')
    rg.fit.n_dips(settings['n_dips'])
    rg.fit.weights(settings['weights'])
    manifests = {}
    for filename, report, pairs, error in results:
        if error is not None and not allow_partial:
            raise error
        rec = rg.add_record()
        rec.id(os.path.splitext(os.path.basename(filename))[0])
        rec.source(filename)
        known = _manifest_records(os.path.dirname(filename), manifests)
        if rec.id() in known:
            rec.probe(known[rec.id()].probe)
            rec.current(known[rec.id()].current_a)
        if error is not None:
            log.warning('Skipping %s: %s', filename, error)
            rec.fit.error(error)
            continue
        rec.fit.result(report)
        rec.fit.pairs(pairs)
    return _write_report(cfg, rg, FIT_REPORT)


def _zero_field_params(cfg, records):
    '''D and E from the two-dip records of the fit reports.'''
    splits, centers = [], []
    for r in records:
        report = read_fit(r.element)
        if len(report.dips) == 2:
            lo, hi = report.centers()
            splits.append(hi - lo)
            centers.append(0.5 * (lo + hi))
    if not splits:
        raise ValidationError('No two-dip zero-field record to take E from')
    gamma = cfg.spin()['gamma_hz_per_t']
    params = SpinParams(float(np.mean(centers)), 0.5 * float(np.mean(splits)),
                        gamma)
    log.info('Zero-field splittings from %d records: D = %g Hz, E = %g Hz',
             len(splits), params.d_hz, params.e_hz)
    return params


def cmd_reconstruct(cfg, files, allow_partial=False):
    '''Reconstruct one field vector per fit record. For every probe the
    first record is the reference the later ones are differenced against.
    '''
    if not files:
        raise ValidationError('No fit reports given')
    opts = cfg.reconstruction()
    geom = cfg.crystal_geometry()
    records = []
    for filename in files:
        for r in load_report(filename, 'fit').records:
            if fit_status(r.element) == FAILED:
                if not allow_partial:
                    raise ValidationError('Record %s holds a failed fit'
                                          % r.id)
                log.warning('Skipping failed fit %s', r.id)
                continue
            records.append(r)

    params = cfg.spin_params()
    if opts['e_source'] == FIT_E:
        params = _zero_field_params(cfg, records)
        records = [r for r in records if len(read_fit(r.element).dips) != 2]

    rg = _new_report('reconstruct', cfg)
    rg.load_extension('reconstruction')
    rg.reconstruction.settings(hint=opts['hint'],
                               polar_formula=opts['polar_formula'],
                               selection=opts['selection'],
                               d_hz=params.d_hz, e_hz=params.e_hz)
    references = {}
    for r in records:
        pairs = read_pairs(r.element)
        if len(pairs) < 3:
            raise ValidationError('three orientations required (record %s '
                                  'holds %d pairs)' % (r.id, len(pairs)))
        tagged = [p.tagged(i) for p, i in zip(pairs, opts['axis_order'])]
        try:
            result = reconstruct_vector(
                    tagged, geom, params, opts['hint'],
                    opts['polar_formula'],
                    opts['polarization_reference_deg'], opts['selection'])
        except NumericalError as e:
            if not allow_partial:
                raise
            log.warning('Skipping record %s: %s', r.id, e)
            continue
        rec = rg.add_record()
        rec.id(r.id)
        rec.source(r.source)
        if r.probe is not None:
            rec.probe(r.probe)
        if r.current_a is not None:
            rec.current(r.current_a)
        rec.reconstruction.result(result)
        if r.probe in references:
            ref_id, ref = references[r.probe]
            rec.reconstruction.difference(vector_difference(result, ref),
                                          ref_id)
        else:
            references[r.probe] = (r.id, result)
    return _write_report(cfg, rg, RECONSTRUCTION_REPORT)


def _grid(lo, hi, step):
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def cmd_wiremap(cfg):
    '''Write the field map of the wire on the configured y-z grid.'''
    m = cfg.map()
    src = cfg.wire_source(m['current_a'])
    fmap = field_map(src, _grid(m['y_min_m'], m['y_max_m'], m['step_m']),
                     _grid(m['z_min_m'], m['z_max_m'], m['step_m']),
                     m['x_m'])
    for probe in cfg.probe():
        spread = footprint_spread(src, probe['y_m'], probe['z_m'],
                                  x_m=probe['x_m'])
        log.info('Probe %s: |B| = %g T, spread over the mode %g T (std)',
                 probe['name'], spread.center.magnitude(), spread.std_t)
    filename = _out_path(cfg, FIELD_MAP)
    write_field_map_csv(fmap, filename)
    log.info('Wrote %s', filename)
    return filename


def cmd_sensitivity(cfg, files=()):
    '''Sensitivity of the configured line shape and, per fit record, of the
    fitted dips.
    '''
    s = cfg.sensitivity()
    line = cfg.line()
    gamma = cfg.spin()['gamma_hz_per_t']
    linewidth = s['linewidth_hz']
    if linewidth is None:
        linewidth = linewidth_from_t2star(s['t2_star_s']) \
            if s['t2_star_s'] is not None else line['fwhm_hz']
    contrast = s['contrast'] if s['contrast'] is not None \
        else line['contrast'][0]
    count_rate = s['count_rate_per_s'] if s['count_rate_per_s'] is not None \
        else line['baseline_counts_per_s']

    rg = _new_report('sensitivity', cfg)
    rg.load_extension('sensitivity')
    rg.sensitivity.inputs(SensitivityInputs(linewidth, contrast, count_rate,
                                            gamma))
    rg.sensitivity.ensemble_scale(ensemble_scale(s['mode_area_um2'],
                                                 s['reference_area_um2']))
    for filename in files:
        for r in load_report(filename, 'fit').records:
            if fit_status(r.element) == FAILED:
                continue
            report = read_fit(r.element)
            depth = np.mean([d.contrast for d in report.dips]) / \
                report.baseline
            fwhm = np.mean([d.fwhm_hz for d in report.dips])
            if not 0 < depth < 1:
                log.warning('Record %s has no usable contrast', r.id)
                continue
            rec = rg.add_record()
            rec.id(r.id)
            rec.source(r.source)
            rec.sensitivity.inputs(SensitivityInputs(fwhm, depth, count_rate,
                                                     gamma))
    return _write_report(cfg, rg, SENSITIVITY_REPORT)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='run configuration (XML)')
    common.add_argument('--seed', type=int, help='noise seed')
    common.add_argument('--out', help='output directory')
    common.add_argument('--n-dips', type=int, dest='n_dips',
                        help='number of dips to fit')
    common.add_argument('--hint', choices=HINTS,
                        help='hemisphere of the field')
    common.add_argument('--allow-partial', action='store_true',
                        dest='allow_partial',
                        help='keep going when single files fail')
    common.add_argument('--jobs', type=int, default=1,
                        help='files processed concurrently')
    common.add_argument('-v', '--verbose', action='store_true')
    common.add_argument('-q', '--quiet', action='store_true')

    parser = argparse.ArgumentParser(
            prog='nvmag',
            description='NV-ensemble vector magnetometry toolkit')
    parser.add_argument('--version', action='version',
                        version=nvmag.version.version_str)
    sub = parser.add_subparsers(dest='command')
    sub.required = True
    sub.add_parser('simulate', parents=[common],
                   help='simulate ODMR spectra and a manifest')
    p = sub.add_parser('fit', parents=[common], help='fit spectrum files')
    p.add_argument('files', nargs='+')
    p = sub.add_parser('reconstruct', parents=[common],
                       help='reconstruct field vectors from fit reports')
    p.add_argument('files', nargs='+')
    sub.add_parser('wiremap', parents=[common],
                   help='write the field map of the wire')
    p = sub.add_parser('sensitivity', parents=[common],
                       help='shot-noise limited sensitivity')
    p.add_argument('files', nargs='*')
    return parser


def _configure(args):
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.seed is not None:
        cfg.noise(seed=args.seed)
    if args.out is not None:
        cfg.output(dir=args.out)
    if args.n_dips is not None:
        cfg.fit(n_dips=args.n_dips)
    if args.hint is not None:
        cfg.reconstruction(hint=args.hint)
    if args.jobs < 1:
        raise ValidationError('--jobs must be at least 1 (%d)' % args.jobs)
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('nvmag').setLevel(level)

    try:
        cfg = _configure(args)
        if args.command == 'simulate':
            cmd_simulate(cfg, args.jobs)
        elif args.command == 'fit':
            cmd_fit(cfg, args.files, args.allow_partial, args.jobs)
        elif args.command == 'reconstruct':
            cmd_reconstruct(cfg, args.files, args.allow_partial)
        elif args.command == 'wiremap':
            cmd_wiremap(cfg)
        elif args.command == 'sensitivity':
            cmd_sensitivity(cfg, args.files)
    except NvmagError as e:
        log.error('%s', e)
        return e.exit_code
    except OSError as e:
        log.error('%s', e)
        return EXIT_IO
    return 0


if __name__ == '__main__':
    sys.exit(main())
