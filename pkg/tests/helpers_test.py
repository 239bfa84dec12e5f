"""Tests for utils.helpers and utils.settings."""
import os

from absl.testing import absltest
from absl.testing import parameterized

from utils import helpers
from utils.settings import DEFAULTS, AppSettings


class DeriveSeedTest(absltest.TestCase):

    def test_splitmix_reference_value(self):
        self.assertEqual(helpers._splitmix64(0), 0xE220A8397B1DCDAF)

    def test_deterministic(self):
        self.assertEqual(helpers.derive_seed(7, 3), helpers.derive_seed(7, 3))

    def test_distinct_per_trial_and_master(self):
        seeds = {helpers.derive_seed(master, trial) for master in range(4) for trial in range(250)}
        self.assertLen(seeds, 1000)

    def test_fits_in_64_bits(self):
        self.assertBetween(helpers.derive_seed(2**70, 2**65), 0, helpers.MASK64)

    def test_negative_rejected(self):
        with self.assertRaises(ValueError):
            helpers.derive_seed(-1, 0)


class FormatTest(parameterized.TestCase):

    @parameterized.parameters(
        (None, ''),
        (0.1, '0.10000000000000001'),
        (2.0, '2'),
        (1e-20, '9.9999999999999995e-21'),
    )
    def test_format_float(self, value, expected):
        self.assertEqual(helpers.format_float(value), expected)

    def test_parse_float_list(self):
        self.assertEqual(helpers.parse_float_list('0.2,0.1, 0.05,'), [0.2, 0.1, 0.05])
        self.assertEqual(helpers.parse_float_list('0.25'), [0.25])

    @parameterized.parameters('', ' , ', 'a,b')
    def test_parse_float_list_rejects(self, text):
        with self.assertRaises(ValueError):
            helpers.parse_float_list(text)

    def test_resource_path(self):
        path = helpers.resource_path(os.path.join('resources', 'profiles', 'desk.json'))
        self.assertTrue(os.path.exists(path))


class AppSettingsTest(absltest.TestCase):

    def setUp(self):
        super().setUp()
        self.path = os.path.join(self.create_tempdir().full_path, 'settings.ini')

    def test_defaults(self):
        settings = AppSettings(self.path)
        self.assertIsNone(settings.get('Profile'))
        self.assertEqual(settings.get('Format'), DEFAULTS['Format'])
        self.assertEqual(settings.get_int('Jobs'), 1)
        self.assertFalse(settings.contains('Profile'))

    def test_save_defaults_persist(self):
        AppSettings(self.path).save_defaults('desk', 4, 'json')
        settings = AppSettings(self.path)
        self.assertTrue(settings.contains('Profile'))
        self.assertEqual(settings.get('Profile'), 'desk')
        self.assertEqual(settings.get_int('Jobs'), 4)
        self.assertEqual(settings.get('Format'), 'json')

    def test_save_defaults_without_profile(self):
        AppSettings(self.path).save_defaults(None, 2, 'csv')
        settings = AppSettings(self.path)
        self.assertFalse(settings.contains('Profile'))
        self.assertEqual(settings.get_int('Jobs'), 2)

    def test_last_output_directory(self):
        settings = AppSettings(self.path)
        settings.set_last_output_directory(os.path.join(os.path.dirname(self.path), 'rows.csv'))
        self.assertEqual(settings.get_last_output_directory(), os.path.dirname(self.path))


if __name__ == '__main__':
    absltest.main()
