import io
import json
import logging
import multiprocessing
import numpy as np
import pandas as pd
from collections import namedtuple
from multiprocessing.pool import ThreadPool
from pyhmt.tools import methods, messages, progressbar
from pyhmt.handler.base import DIM_CAP
from pyhmt.handler.algebra import AlgebraShape
from pyhmt.handler.module import FAMILIES, module_family, check_module_axioms
from pyhmt.process import Process, Guards, THEOREMS
from .pipelines import TheoremSuite
from .verifier import Verifier

RESEEDS = 3
# largest single block M_n within the algebra cap
BLOCK_CAP = int(np.sqrt(DIM_CAP))
COLUMNS = ['theorem', 'trial', 'seed', 'config', 'hypothesis_ok', 'refused', 'identity_residual',
           'loewner_slack', 'scaled_slack', 'passed', 'notes']
CONFIG_KEYS = ('theorem', 'trials', 'dims', 'blocks', 'seed', 'tol', 'guards', 'report', 'trials_csv', 'jobs',
               'quiet')


class RunConfig(namedtuple('RunConfig', ['theorems', 'trials', 'dims', 'blocks', 'seed', 'tol', 'guards',
                                         'report_path', 'trials_csv', 'jobs', 'quiet'])):
    """ Validated configuration of a verification run

    Use make_config (keyword arguments) or RunConfig.from_args (argparse namespace).
    """
    __slots__ = ()

    @classmethod
    def from_args(cls, args, defaults=None, ignore=()):
        """ Merge an argparse namespace over the values of a --config file

        :param args:        argparse.Namespace, flags left as None fall back to the file
        :param defaults:    dict from a JSON config file
        :param ignore:      flags with another meaning in the calling subcommand
        """
        values = dict((key, value) for key, value in (defaults or {}).items() if key not in ignore)
        for key in CONFIG_KEYS:
            if key in ignore:
                continue
            value = getattr(args, key, None)
            if value is not None and value is not False:
                values[key] = value
        unknown = set(values) - set(CONFIG_KEYS)
        if unknown:
            methods.raiseerror(messages.Errors.ConfigError, 'Unknown config key(s) {}'.format(sorted(unknown)))
        return make_config(**values)

    def to_dict(self):
        """ The part of the configuration that determines the report
        """
        return dict(theorems=list(self.theorems), trials=self.trials, dims=list(self.dims),
                    blocks=[str(b) for b in self.blocks], seed=self.seed, tol=self.tol,
                    guards=dict(self.guards._asdict()))


def parse_theorems(value, known=THEOREMS):
    """ 'all', one id or a comma-separated list of ids
    """
    if value is None or value == 'all':
        return tuple(known)
    items = value if isinstance(value, (list, tuple)) else str(value).split(',')
    items = [str(item).strip() for item in items if str(item).strip()]
    unknown = [item for item in items if item not in known]
    if unknown or not items:
        methods.raiseerror(messages.Errors.UnknownTheorem,
                           'Unknown theorem id(s) {}; available: {}'.format(unknown, ', '.join(known)))
    return tuple(item for item in known if item in items)


def parse_blocks(value):
    """ Comma-separated block shapes such as '2,2+3'
    """
    if not value:
        return ()
    items = value if isinstance(value, (list, tuple)) else str(value).split(',')
    shapes = []
    for item in items:
        try:
            shapes.append(AlgebraShape.parse(item))
        except (messages.Errors.DimensionCap, messages.Errors.ShapeMismatch) as e:
            methods.raiseerror(messages.Errors.ConfigError, 'Wrong block shape "{}": {}'.format(item, e))
    return tuple(shapes)


def parse_jobs(value):
    """ Thread count, 'max' for every core, clamped to the cpu count
    """
    if value is None:
        return 1
    if str(value) == 'max':
        return multiprocessing.cpu_count()
    try:
        jobs = int(value)
    except (TypeError, ValueError):
        methods.raiseerror(messages.Errors.ConfigError, 'Wrong --jobs value "{}"'.format(value))
    if jobs < 1:
        methods.raiseerror(messages.Errors.ConfigError, '--jobs must be >= 1 or "max"')
    return min(jobs, multiprocessing.cpu_count())


def make_config(theorem='all', trials=200, dims='1..4', blocks=None, seed=0, tol=1e-8, guards=None,
                report=None, trials_csv=None, jobs=1, quiet=False):
    """ Build a RunConfig, raising ConfigError or UnknownTheorem on bad input
    """
    theorems = parse_theorems(theorem)
    try:
        trials = int(trials)
        seed = int(seed)
        tol = float(tol)
    except (TypeError, ValueError) as e:
        methods.raiseerror(messages.Errors.ConfigError, 'Wrong numeric option: {}'.format(e))
    if trials < 1:
        methods.raiseerror(messages.Errors.ConfigError, 'trials must be >= 1, got {}'.format(trials))
    if not np.isfinite(tol) or tol <= 0:
        methods.raiseerror(messages.Errors.ConfigError, 'tol must be positive, got {}'.format(tol))
    low, high = dims if isinstance(dims, (list, tuple)) else methods.parse_range(dims)
    low, high = int(low), int(high)
    if low < 1 or high > BLOCK_CAP or low > high:
        methods.raiseerror(messages.Errors.ConfigError,
                           'dims must lie within 1..{}, got {}..{}'.format(BLOCK_CAP, low, high))
    if guards is None:
        guards = Guards()
    elif isinstance(guards, dict):
        unknown = set(guards) - set(Guards._fields)
        if unknown:
            methods.raiseerror(messages.Errors.ConfigError, 'Unknown guard(s) {}'.format(sorted(unknown)))
        guards = Guards(**guards)
    elif not isinstance(guards, Guards):
        methods.raiseerror(messages.Errors.ConfigError, 'guards must be a mapping')
    return RunConfig(theorems=theorems, trials=trials, dims=(low, high), blocks=parse_blocks(blocks),
                     seed=seed, tol=tol, guards=guards, report_path=report, trials_csv=trials_csv,
                     jobs=parse_jobs(jobs), quiet=bool(quiet))


def load_config_file(path):
    """ JSON configuration file whose keys mirror the CLI flags
    """
    try:
        with io.open(path, encoding='utf-8') as f:
            values = json.load(f)
    except (IOError, OSError, ValueError) as e:
        methods.raiseerror(messages.Errors.ConfigError, 'Cannot read config "{}": {}'.format(path, e))
    if not isinstance(values, dict):
        methods.raiseerror(messages.Errors.ConfigError, 'Config "{}" must hold a JSON object'.format(path))
    return dict((key.replace('-', '_'), value) for key, value in values.items())


def _number(value):
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return None
    return float(value)


VerificationReport = namedtuple('VerificationReport', ['report', 'table', 'passed'])


class Pipelines(object):
    """ Runner of the verification suites

    Trials of one theorem fan out over a thread pool; results are collected in trial
    order, so the report does not depend on the number of threads.
    """
    def __init__(self, config, logger=None):
        """
        :param config:  RunConfig
        :param logger:  logging.Logger, 'pyhmt.pipelines' if not given
        """
        self._config = config
        self.logger = logger if logger is not None else logging.getLogger('pyhmt.pipelines')
        self._proc = Process(config.guards)
        self._verifier = Verifier(self._proc, tol=config.tol)
        self._suite = TheoremSuite(self._proc, self._verifier, config.dims, config.blocks)
        self._parallel = 1
        self.set_parallel(config.jobs)

    @property
    def avail(self):
        return self._suite.avail

    @property
    def config(self):
        return self._config

    @property
    def verifier(self):
        return self._verifier

    def set_parallel(self, n_thread):
        """ Number of threads, 'max' for every core

        :param n_thread:    int or 'max'
        """
        self._parallel = parse_jobs(n_thread)
        self.logger.debug('Suite::n_thread is setted as {}'.format(self._parallel))

    def replay(self, theorem_id, seed):
        """ Rerun one trial from its seed (the seeds listed as failures in a report)

        :return: (configuration label, TrialResult)
        """
        parse_theorems(theorem_id)
        return self._suite.run(theorem_id, int(seed))

    def _worker(self, item):
        theorem_id, index = item
        seed = methods.trial_seed(self._config.seed, theorem_id, index)
        try:
            for attempt in range(RESEEDS):
                try:
                    label, result = self._suite.run(theorem_id, seed)
                    break
                except messages.Errors.GenerationFailure:
                    if attempt == RESEEDS - 1:
                        raise
                    seed = methods.trial_seed(self._config.seed, '{}/{}'.format(theorem_id, attempt + 1), index)
                    self.logger.warning('Suite::Reseed [{}] trial={} seed={}'.format(theorem_id, index, seed))
        except (messages.Errors.IllConditioned, messages.Errors.NotPositive) as e:
            # a numerical breakdown fails the trial, not the run
            self.logger.warning('Suite::Error [{}] trial={} seed={} {}: {}'.format(
                theorem_id, index, seed, type(e).__name__, e))
            return dict(theorem=theorem_id, trial=index, seed=seed, config='', hypothesis_ok=None, refused=False,
                        identity_residual=None, loewner_slack=None, scaled_slack=None, passed=False,
                        notes='error: {}: {}'.format(type(e).__name__, e))
        scaled = None if result.loewner_slack is None else result.loewner_slack / result.slack_scale
        row = dict(theorem=theorem_id, trial=index, seed=seed, config=label,
                   hypothesis_ok=result.hypothesis_ok, refused=result.refused,
                   identity_residual=_number(result.identity_residual),
                   loewner_slack=_number(result.loewner_slack), scaled_slack=_number(scaled),
                   passed=result.passed, notes=result.notes)
        return row

    def run_theorem(self, theorem_id):
        """ All trials of one theorem

        :return: list of trial rows ordered by trial index
        """
        items = [(theorem_id, index) for index in range(self._config.trials)]
        thread = self._parallel
        self.logger.info('Suite::[{}] is executed with {} thread(s).'.format(theorem_id, thread))
        pool = ThreadPool(thread)
        try:
            rows = list(progressbar(pool.imap(self._worker, items), desc=theorem_id, total=len(items),
                                    disable=self._config.quiet, leave=False))
        finally:
            pool.close()
            pool.join()
        return sorted(rows, key=lambda row: row['trial'])

    def run(self):
        """ Run every configured theorem and aggregate the report

        :return: VerificationReport(report dict, trial DataFrame, overall pass)
        """
        rows = []
        for theorem_id in self._config.theorems:
            rows.extend(self.run_theorem(theorem_id))
        table = pd.DataFrame(rows, columns=COLUMNS)
        for column in ('identity_residual', 'loewner_slack', 'scaled_slack'):
            table[column] = table[column].astype(float)
        report = self.summarize(table)
        if self._config.trials_csv:
            table.to_csv(self._config.trials_csv, index=False)
        if self._config.report_path:
            self.write_report(report, self._config.report_path)
        return VerificationReport(report=report, table=table, passed=report['pass'])

    def summarize(self, table):
        """ Per-theorem aggregates of the trial table
        """
        per_theorem = []
        grouped = table.groupby('theorem', sort=False)
        for theorem_id in self._config.theorems:
            if theorem_id not in grouped.groups:
                continue
            group = grouped.get_group(theorem_id).sort_values('trial')
            failures = [int(seed) for seed in group.loc[~group['passed'].astype(bool), 'seed']]
            per_theorem.append(dict(id=theorem_id, trials=int(len(group)),
                                    max_identity_residual=_number(group['identity_residual'].max()),
                                    min_loewner_slack=_number(group['loewner_slack'].min()),
                                    failures=failures))
            if failures:
                self.logger.info('Suite::[{}] failed on {} trial(s)'.format(theorem_id, len(failures)))
        passed = all(not item['failures'] for item in per_theorem)
        return dict(config=self._config.to_dict(), per_theorem=per_theorem, **{'pass': passed})

    @staticmethod
    def dumps(report):
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'

    def write_report(self, report, path):
        with io.open(path, 'w', encoding='utf-8') as f:
            f.write(self.dumps(report))
        self.logger.info('Suite::Report is written to {}'.format(path))

    def run_axioms(self, trials=None, seed=None):
        """ Module-axiom property run on every module family

        :return: (DataFrame with one row per family, overall pass)
        """
        trials = self._config.trials if trials is None else int(trials)
        seed = self._config.seed if seed is None else int(seed)
        if self._config.blocks:
            algebra = self._config.blocks[0]
        else:
            algebra = AlgebraShape((self._config.dims[1],))
        rows = []
        for kind in progressbar(FAMILIES, desc='axioms', disable=self._config.quiet, leave=False):
            space = module_family(kind, algebra)
            result = check_module_axioms(space, trials, methods.trial_seed(seed, kind, 0))
            row = dict(family=repr(space), trials=result.trials, passed=result.passed)
            row.update(result.residuals)
            rows.append(row)
        table = pd.DataFrame(rows)
        return table, bool(table['passed'].all())
