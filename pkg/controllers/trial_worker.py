import logging

from PyQt5 import QtCore


class WorkerSignals(QtCore.QObject):
    row_ready = QtCore.pyqtSignal(object)
    error_occurred = QtCore.pyqtSignal(int, str)


class TrialWorker(QtCore.QRunnable):
    """Runs one trial on a pool thread and reports through ``signals``."""

    def __init__(self, spec, runner):
        super().__init__()
        self.spec = spec
        self.runner = runner
        self.signals = WorkerSignals()
        # The sweep keeps the Python object alive until the pool is done.
        self.setAutoDelete(False)

    def run(self):
        try:
            result = self.runner(self.spec)
            self.signals.row_ready.emit(result)
        except Exception as e:
            logging.exception(f"Trial {self.spec.trial} failed")
            self.signals.error_occurred.emit(self.spec.trial, f"{type(e).__name__}: {str(e)}")


class TrialPool:
    """Fans trials out over a QThreadPool and collects results in trial order."""

    def __init__(self, jobs):
        self.pool = QtCore.QThreadPool()
        self.pool.setMaxThreadCount(max(1, int(jobs)))
        self.mutex = QtCore.QMutex()
        self.results = []
        self.errors = []

    def _collect(self, result):
        self.mutex.lock()
        try:
            self.results.append(result)
        finally:
            self.mutex.unlock()

    def _fail(self, trial, message):
        self.mutex.lock()
        try:
            self.errors.append((trial, message))
        finally:
            self.mutex.unlock()

    def run(self, specs, runner):
        """Returns (results, errors); results sorted by ``row.trial``."""
        workers = []
        for spec in specs:
            worker = TrialWorker(spec, runner)
            worker.signals.row_ready.connect(self._collect, QtCore.Qt.DirectConnection)
            worker.signals.error_occurred.connect(self._fail, QtCore.Qt.DirectConnection)
            workers.append(worker)
            self.pool.start(worker)
        self.pool.waitForDone()
        results = sorted(self.results, key=lambda result: result.row.trial)
        errors = sorted(self.errors)
        self.results, self.errors = [], []
        return results, errors
