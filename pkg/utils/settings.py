import os
from PyQt5.QtCore import QSettings, QStandardPaths

ORGANIZATION = "RggPursuit"
APPLICATION = "RggPursuit"

DEFAULTS = {
    "Jobs": 1,
    "Format": "csv",
}


class AppSettings:
    """Stored defaults for the command line; ``path`` selects an INI file
    instead of the per-user store."""

    def __init__(self, path=None):
        if path is None:
            self.settings = QSettings(ORGANIZATION, APPLICATION)
        else:
            self.settings = QSettings(path, QSettings.IniFormat)

    def get(self, key, default=None):
        if default is None:
            default = DEFAULTS.get(key)
        return self.settings.value(key, default)

    def contains(self, key):
        return self.settings.contains(key)

    def set(self, key, value):
        self.settings.setValue(key, value)

    def get_int(self, key, default=None):
        if default is None:
            default = DEFAULTS.get(key, 0)
        return self.settings.value(key, default, type=int)

    def sync(self):
        self.settings.sync()

    def get_last_output_directory(self):
        """Returns the directory of the last --out file."""
        return self.get("LastOutputDirectory", QStandardPaths.writableLocation(QStandardPaths.HomeLocation))

    def set_last_output_directory(self, path):
        self.set("LastOutputDirectory", os.path.dirname(os.path.abspath(path)))

    def save_defaults(self, profile, jobs, output_format):
        """Stores jobs and format; the profile only when one was given."""
        if profile is not None:
            self.set("Profile", profile)
        self.set("Jobs", int(jobs))
        self.set("Format", output_format)
        self.sync()
