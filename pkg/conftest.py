"""Pytest wiring for the absltest-based suite."""
from absl import flags
from PyQt5 import QtCore

_QT_APP = None


def pytest_configure(config):
    # absltest helpers (create_tempdir) read absl flags, which pytest never parses.
    if not flags.FLAGS.is_parsed():
        flags.FLAGS.mark_as_parsed()
    # One QCoreApplication for the session, so app.main() reuses it instead of
    # destroying a fresh one on return (which deletes QSettings made in setUp).
    global _QT_APP
    _QT_APP = QtCore.QCoreApplication.instance() or QtCore.QCoreApplication([])
