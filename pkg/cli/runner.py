"""
Task execution.

Each task block runs through its handler and yields a TaskReport. Library
errors (FdhomError, and ValueError in general) are embedded in the report of
the task that raised them; anything else is logged with its traceback and
embedded the same way. A task that declares `expect pass` or `expect fail`
is marked failed when its verdict disagrees.

With parallel=True the tasks run in worker processes, each rebuilding the
workspace from the document, and the reports come back in declaration order.
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

from cli.parser import InputDocument, TaskDecl
from cli.workspace import Workspace
from common import get_settings, override_settings
from common.errors import HypothesisFailed
from hochschild.bar import bar_cochain_oracle
from hochschild.fg import fg_check
from hochschild.graded import ext_slice, hh_slice
from hochschild.hh import center_dim, hh_dims
from homology.ext import ext
from homology.gorenstein import gorenstein_report, is_mcm
from homology.resolution import ExceedsBound, min_resolution, projective_dimension
from homology.rotation import rotation_map
from homology.stable import sthom_to_ext
from reps.morphisms import is_projective
from semtl.checks import check_semt, check_semtl
from semtl.data import SemtlData
from semtl.levels import increase_level, lift_semt_to_semtl
from semtl.verify import verify_ext_iso, verify_fg_transfer_diagram, verify_hh_transfer

logger = logging.getLogger(__name__)

OK = 'ok'
FAILED = 'failed'
ERROR = 'error'


class RunOptions:
    """Run-wide switches; picklable so worker processes can rebuild settings."""

    def __init__(self, seed: Optional[int] = None, cap_degree: int = 6, cap_paths: Optional[int] = None,
                 parallel: bool = False, verbose: bool = False):
        self.seed = seed
        self.cap_degree = cap_degree
        self.cap_paths = cap_paths
        self.parallel = parallel
        self.verbose = verbose

    def apply(self):
        override_settings(seed=self.seed, path_length_cap=self.cap_paths)

    def task_seed(self, task: TaskDecl) -> int:
        seed = task.integer('seed')
        if seed is not None:
            return seed
        return get_settings().seed if self.seed is None else self.seed

    def __repr__(self):
        return f"<RunOptions seed={self.seed} cap_degree={self.cap_degree} parallel={self.parallel}>"


class TaskResult:
    """What a handler returns: the data, the verdict if any, a one-line summary."""

    def __init__(self, data: dict, summary: str, passed: Optional[bool] = None):
        self.data = data
        self.summary = summary
        self.passed = passed


class TaskReport:
    """Outcome of one task; errors are kept as (type name, message) so reports pickle."""

    def __init__(self, index: int, task: TaskDecl, status: str, result: Optional[TaskResult] = None,
                 error: Optional[Tuple[str, str]] = None, seconds: float = 0.0):
        self.index = index
        self.task = task
        self.status = status
        self.result = result
        self.error = error
        self.seconds = seconds

    @property
    def summary(self) -> str:
        if self.error is not None:
            return f"{self.error[0]}: {self.error[1]}"
        return self.result.summary

    def to_dict(self, timing: bool = False) -> dict:
        report = {
            'index': self.index,
            'task': self.task.kind,
            'line': self.task.line,
            'params': {key: ' '.join(values) for key, values in self.task.params.items()},
            'status': self.status,
        }
        if self.result is not None:
            report['passed'] = self.result.passed
            report['result'] = self.result.data
        if self.error is not None:
            report['error'] = {'type': self.error[0], 'message': self.error[1]}
        if timing:
            report['seconds'] = round(self.seconds, 3)
        return report

    def __repr__(self):
        return f"<TaskReport #{self.index} {self.task.kind} {self.status}>"


def _error_record(exc: BaseException) -> Tuple[str, str]:
    return type(exc).__name__, str(exc)


def _dimension(value):
    return {'exceeds': value.bound} if isinstance(value, ExceedsBound) else value


def _verdict(passed: bool) -> str:
    return 'pass' if passed else 'fail'


# =============================================================================
# Handlers
# =============================================================================

def _dim(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    if task.has('algebra'):
        a = ws.algebra(task.word('algebra'))
        data = {
            'algebra': a.name,
            'field': a.field.name,
            'dim': a.dim,
            'vertices': a.vertex_count,
            'arrows': a.arrow_count,
            'loewy_length': a.loewy_length,
            'blocks': len(a.blocks()),
        }
        return TaskResult(data, f"dim {a.name} = {a.dim}")
    x = ws.module(task.word('module'))
    data = {'module': x.label, 'algebra': x.algebra.name, 'dims': x.dims, 'dim': x.total_dim,
            'projective': is_projective(x)}
    return TaskResult(data, f"dims {x.label} = {x.dims}")


def _basis(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    a = ws.algebra(task.word('algebra'))
    labels = [a.label(i) for i in range(a.dim)]
    return TaskResult({'algebra': a.name, 'dim': a.dim, 'basis': labels}, f"basis {' '.join(labels)}")


def _resolve(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    x = ws.module(task.word('module'))
    upto = task.integer('upto', options.cap_degree)
    res = min_resolution(x, upto)
    terms = []
    for i in range(upto + 1):
        term = res.term(i)
        terms.append({
            'degree': i,
            'generators': [x.algebra.quiver.vertices[v] for v in term.generators],
            'dims': term.dims,
            'syzygy_dims': res.syzygy(i + 1).dims,
        })
    pd = projective_dimension(x, task.integer('bound'))
    ranks = [len(t['generators']) for t in terms]
    return TaskResult({'module': x.label, 'terms': terms, 'projective_dimension': _dimension(pd)},
                      f"ranks {ranks}, pd {pd}")


def _ext(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    x, y = ws.module(task.word('source')), ws.module(task.word('target'))
    upto = task.integer('upto', options.cap_degree)
    dims = [ext(x, y, n).dim for n in range(upto + 1)]
    data = {'source': x.label, 'target': y.label, 'dims': dims}
    window = task.window()
    if window is not None:
        if x is not y:
            raise ValueError("A window needs source and target to be the same module")
        piece = ext_slice(x, *window)
        data['slice'] = piece.to_dict()
        data['slice']['associative'] = piece.is_associative()
    return TaskResult(data, f"dims {dims}")


def _hh(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    a = ws.algebra(task.word('algebra'))
    upto = task.integer('upto', options.cap_degree)
    dims = hh_dims(a, upto)
    data = {'algebra': a.name, 'dims': dims, 'center_dim': center_dim(a)}
    passed = None
    if task.has('oracle'):
        top = min(upto, get_settings().bar_cap)
        oracle = [bar_cochain_oracle(a, n) for n in range(top + 1)]
        passed = oracle == dims[:top + 1] and data['center_dim'] == dims[0]
        data['oracle'] = oracle
        data['agrees'] = passed
    window = task.window()
    if window is not None:
        piece = hh_slice(a, *window)
        data['slice'] = piece.to_dict()
        data['slice']['associative'] = piece.is_associative()
    summary = f"dims {dims}" + ('' if passed is None else f", oracle {_verdict(passed)}")
    return TaskResult(data, summary, passed)


def _gorenstein(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    a = ws.algebra(task.word('algebra'))
    report = gorenstein_report(a, task.integer('bound'))
    verdict = f"yes({report.dimension})" if report.is_gorenstein else f"no_evidence({report.bound})"
    data = report.to_dict()
    data['verdict'] = verdict
    return TaskResult(data, f"{a.name}: {verdict}", report.is_gorenstein)


def _mcm(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    x = ws.module(task.word('module'))
    report = gorenstein_report(x.algebra, task.integer('bound'))
    mcm = is_mcm(x, report)
    return TaskResult({'module': x.label, 'd': report.dimension, 'mcm': mcm}, f"{x.label} mcm={mcm}", mcm)


def _stablehom(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    c, a = ws.module(task.word('source')), ws.module(task.word('target'))
    upto = task.integer('upto', options.cap_degree)
    degrees = []
    for n in range(1, upto + 1):
        try:
            bridge = sthom_to_ext(c, a, n)
        except HypothesisFailed as exc:
            degrees.append({'degree': n, 'skipped': str(exc)})
            continue
        degrees.append({
            'degree': n,
            'sthom_dim': bridge.source.dim,
            'ext_dim': bridge.target.dim,
            'bijective': bridge.is_bijective(),
        })
    checked = [d for d in degrees if 'bijective' in d]
    passed = all(d['bijective'] for d in checked)
    return TaskResult({'source': c.label, 'target': a.label, 'degrees': degrees},
                      f"{len(checked)} degrees checked, {_verdict(passed)}", passed)


def _rotate(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    x = ws.module(task.word('source'))
    y = ws.module(task.word('target', task.word('source')))
    upto = task.integer('upto', options.cap_degree)
    rows = []
    for n in range(1, upto + 1):
        group = ext(x, y, n)
        for i in range(n):
            linear = rotation_map(group, i)
            rows.append({'degree': n, 'index': i, 'source_dim': linear.source_dim,
                         'target_dim': linear.target_dim, 'bijective': linear.is_bijective()})
    passed = all(row['bijective'] for row in rows)
    return TaskResult({'source': x.label, 'target': y.label, 'rotations': rows},
                      f"{len(rows)} rotations, {_verdict(passed)}", passed)


def _data(ws: Workspace, task: TaskDecl) -> SemtlData:
    data = ws.semtl_data(task.params)
    bump = task.integer('bump', 0)
    return increase_level(data, bump) if bump else data


def _semt_report(ws: Workspace, task: TaskDecl, options: RunOptions):
    p = task.params
    x = ws.module(task.word('x')) if task.has('x') else None
    y = ws.module(task.word('y')) if task.has('y') else None
    return check_semt(ws.algebra(p['lambda'][0]), ws.algebra(p['sigma'][0]), ws.module(p['m'][0]),
                      ws.module(p['n'][0]), x, y, cap=task.integer('bound'), seed=options.task_seed(task))


def _semt_check(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    report = _semt_report(ws, task, options)
    return TaskResult(report.to_dict(options.verbose), f"semt {_verdict(report.passed)}", report.passed)


def _semtl_summary(report) -> str:
    failed = f" (conditions {report.failed} fail)" if report.failed else ''
    return f"level {report.data.level}: {_verdict(report.passed)}{failed}"


def _semtl_check(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    report = check_semtl(_data(ws, task), options.task_seed(task))
    return TaskResult(report.to_dict(options.verbose), _semtl_summary(report), report.passed)


def _lift(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    semt = _semt_report(ws, task, options)
    data = lift_semt_to_semtl(semt)
    report = check_semtl(data, options.task_seed(task))
    result = {'semt': semt.to_dict(options.verbose), 'level': data.level, 'semtl': report.to_dict(options.verbose)}
    return TaskResult(result, f"lifted to {_semtl_summary(report)}", report.passed)


def _bump_level(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    data = increase_level(ws.semtl_data(task.params), task.integer('steps', 1))
    report = check_semtl(data, options.task_seed(task))
    return TaskResult(report.to_dict(options.verbose), f"bumped to {_semtl_summary(report)}", report.passed)


def _ext_iso(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    report = verify_ext_iso(_data(ws, task), ws.module(task.word('source')), ws.module(task.word('target')),
                            task.integer('upto', options.cap_degree), task.word('direction', 'N'),
                            task.integer('bound'))
    return TaskResult(report.to_dict(), f"d={report.d}, dims {report.dims()}, {_verdict(report.passed)}",
                      report.passed)


def _unmet(exc: HypothesisFailed) -> TaskResult:
    return TaskResult({'hypotheses': False, 'reason': str(exc)}, f"hypotheses fail: {exc}", False)


def _hh_transfer(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    try:
        report = verify_hh_transfer(_data(ws, task), task.integer('upto', options.cap_degree),
                                    task.integer('samples', 8), options.task_seed(task), task.integer('bound'))
    except HypothesisFailed as exc:
        return _unmet(exc)
    dims = [(deg.dim_lambda, deg.dim_sigma) for deg in report.degrees]
    return TaskResult(report.to_dict(), f"window ({report.d}, {report.upto}] dims {dims}, {_verdict(report.passed)}",
                      report.passed)


def _fg(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    a = ws.algebra(task.word('algebra'))
    report = fg_check(a, task.integer('upto', options.cap_degree), bound=task.integer('bound'))
    return TaskResult(report.to_dict(), f"{a.name}: {report.verdict_text()}", report.consistent)


def _fg_diagram(ws: Workspace, task: TaskDecl, options: RunOptions) -> TaskResult:
    try:
        report = verify_fg_transfer_diagram(_data(ws, task), task.integer('upto', options.cap_degree),
                                            task.integer('cap'), task.integer('bound'))
    except HypothesisFailed as exc:
        return _unmet(exc)
    summary = f"commutes={report.commutes}, fg {report.fg_lambda.verdict_text()} / {report.fg_sigma.verdict_text()}"
    return TaskResult(report.to_dict(), summary, report.passed)


HANDLERS: Dict[str, Callable[[Workspace, TaskDecl, RunOptions], TaskResult]] = {
    'dim': _dim,
    'basis': _basis,
    'resolve': _resolve,
    'ext': _ext,
    'hh': _hh,
    'gorenstein': _gorenstein,
    'mcm': _mcm,
    'stablehom': _stablehom,
    'rotate': _rotate,
    'semt-check': _semt_check,
    'semtl-check': _semtl_check,
    'lift': _lift,
    'bump-level': _bump_level,
    'ext-iso': _ext_iso,
    'hh-transfer': _hh_transfer,
    'fg': _fg,
    'fg-diagram': _fg_diagram,
}


# =============================================================================
# Running
# =============================================================================

def run_task(ws: Workspace, index: int, task: TaskDecl, options: RunOptions) -> TaskReport:
    """Run one task, embedding any error in its report."""
    logger.info(f"Task {index} {task.label} started")
    start = time.perf_counter()
    try:
        result = HANDLERS[task.kind](ws, task, options)
    except ValueError as exc:
        logger.error(f"Task {index} {task.label} failed: {exc}")
        return TaskReport(index, task, ERROR, error=_error_record(exc), seconds=time.perf_counter() - start)
    except Exception as exc:
        logger.exception(f"Task {index} {task.label} raised an unexpected error")
        return TaskReport(index, task, ERROR, error=_error_record(exc), seconds=time.perf_counter() - start)
    seconds = time.perf_counter() - start

    status = OK
    expected = task.word('expect')
    if expected is not None and result.passed is not None and (expected == 'pass') != result.passed:
        status = FAILED
        logger.warning(f"Task {index} {task.label}: expected {expected}, got {_verdict(result.passed)}")
    logger.info(f"Task {index} {task.label} {status} in {seconds:.2f}s: {result.summary}")
    return TaskReport(index, task, status, result, seconds=seconds)


def run(document: InputDocument, options: Optional[RunOptions] = None) -> List[TaskReport]:
    """Run every task of the document in declaration order."""
    options = options or RunOptions()
    options.apply()
    if options.parallel and len(document.tasks) > 1:
        return asyncio.run(run_async(document, options))
    ws = Workspace(document)
    return [run_task(ws, i, task, options) for i, task in enumerate(document.tasks)]


def _run_in_worker(document: InputDocument, index: int, options: RunOptions) -> TaskReport:
    options.apply()
    return run_task(Workspace(document), index, document.tasks[index], options)


async def run_async(document: InputDocument, options: RunOptions) -> List[TaskReport]:
    """Run the tasks concurrently in worker processes; reports keep declaration order."""
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor() as pool:
        futures = [
            loop.run_in_executor(pool, _run_in_worker, document, i, options)
            for i in range(len(document.tasks))
        ]
        return list(await asyncio.gather(*futures))


def exit_code(reports: List[TaskReport]) -> int:
    """0 when every task is ok, 1 otherwise."""
    return 0 if all(r.status == OK for r in reports) else 1
