"""
Tests for run configuration validation.
"""

from fractions import Fraction

from django.test import SimpleTestCase

from analysis.services.config import COMMANDS, list_commands, validate_run_config
from analysis.services.exceptions import ConfigError


class ValidateRunConfigTestCase(SimpleTestCase):
    """Test option merging, coercion and requirements"""

    def test_precedence(self):
        """Test defaults < settings < config file < flags"""
        flags = {"kernel": "szego_disk", "random_points": "3"}
        self.assertEqual(validate_run_config("np-test", flags).seed, 0)

        settings_config = {"default_seed": 5}
        self.assertEqual(validate_run_config("np-test", flags, settings_config).seed, 5)

        file_config = {"seed": 7}
        self.assertEqual(
            validate_run_config("np-test", flags, settings_config, file_config).seed, 7
        )

        flags["seed"] = "9"
        self.assertEqual(
            validate_run_config("np-test", flags, settings_config, file_config).seed, 9
        )

    def test_none_flags_are_not_given(self):
        """Test unset flags do not override lower sources"""
        rc = validate_run_config(
            "np-oracle", {"kernel": "szego_disk", "order": None}, None, {"order": 4}
        )
        self.assertEqual(rc.order, 4)

    def test_settings_tolerance(self):
        """Test settings feed the tolerance and format defaults"""
        rc = validate_run_config(
            "np-oracle",
            {"kernel": "szego_disk"},
            {"psd_tolerance": 1e-8, "default_format": "text"},
        )
        self.assertEqual(rc.tolerance, 1e-8)
        self.assertEqual(rc.format, "text")

    def test_coercion(self):
        """Test string flags are coerced to the declared types"""
        rc = validate_run_config(
            "verify-identity",
            {"space": "ball", "n": "3", "tolerance": "1e-9", "expect_pass": "true"},
        )
        self.assertEqual(rc.n, 3)
        self.assertEqual(rc.tolerance, 1e-9)
        self.assertIs(rc.expect_pass, True)

    def test_file_integers_from_floats(self):
        """Test whole floats are accepted for integer options"""
        rc = validate_run_config("growth-report", None, None, {"n_max": 3.0})
        self.assertEqual(rc.n_max, 3)
        self.assertIsInstance(rc.n_max, int)

    def test_invalid_values(self):
        """Test bad types, choices and ranges"""
        cases = [
            {"n": "abc"},
            {"n": "2.5"},
            {"n": "0"},
            {"format": "xml"},
            {"tolerance": "0"},
            {"expect_pass": "maybe"},
            {"space": "dirichlet"},
        ]
        for flags in cases:
            with self.subTest(flags=flags):
                with self.assertRaises(ConfigError):
                    validate_run_config("verify-identity", {"space": "ball", "n": "2", **flags})

    def test_scale(self):
        """Test the dominance scale is rational"""
        flags = {"kernel": "szego_disk", "upper": "sandwich_disk", "random_points": "2"}
        rc = validate_run_config("dominance", {**flags, "scale": "1/2"})
        self.assertEqual(rc.scale_fraction, Fraction(1, 2))
        with self.assertRaisesMessage(ConfigError, "scale"):
            validate_run_config("dominance", {**flags, "scale": "half"})

    def test_requirements(self):
        """Test missing options are named as flags"""
        with self.assertRaisesMessage(ConfigError, "--points or --random-points"):
            validate_run_config("np-test", {"kernel": "szego_disk"})
        with self.assertRaisesMessage(ConfigError, "--space, --n"):
            validate_run_config("verify-identity", {})
        with self.assertRaisesMessage(ConfigError, "--n-max"):
            validate_run_config("growth-report", {})

    def test_unknown_options_and_commands(self):
        """Test unknown names are rejected"""
        with self.assertRaisesMessage(ConfigError, "Unknown options: colour"):
            validate_run_config("counterexample", {"n": "2"}, None, {"colour": "red"})
        with self.assertRaisesMessage(ConfigError, "Unknown command"):
            validate_run_config("prove", {})

    def test_command_key_in_file_is_ignored(self):
        """Test config files may name their command"""
        rc = validate_run_config("counterexample", None, None, {"command": "counterexample", "n": 2})
        self.assertEqual(rc.n, 2)

    def test_degree_default(self):
        """Test verify-identity truncates at N + 8 unless told otherwise"""
        self.assertEqual(validate_run_config("verify-identity", {"space": "bergman", "n": "3"}).degree, 11)
        self.assertEqual(
            validate_run_config("verify-identity", {"space": "bergman", "n": "3", "degree": "5"}).degree,
            5,
        )

    def test_identity_range(self):
        """Test an N range leaves the degree to each N and must not run backwards"""
        rc = validate_run_config("verify-identity", {"space": "ball", "n": "2", "n_max": "4"})
        self.assertIsNone(rc.degree)
        self.assertEqual(rc.n_max, 4)
        with self.assertRaisesMessage(ConfigError, "Option 'n_max' must be >= n (3), got 2"):
            validate_run_config("verify-identity", {"space": "ball", "n": "3", "n_max": "2"})

    def test_run_config_access(self):
        """Test attribute access and the serialized form"""
        rc = validate_run_config("counterexample", {"n": "2"})
        self.assertIsNone(rc.points)
        self.assertEqual(rc.to_dict()["command"], "counterexample")
        self.assertEqual(rc.to_dict()["n"], 2)
        with self.assertRaises(AttributeError):
            rc.colour

    def test_commands(self):
        """Test the command list"""
        self.assertEqual(len(list_commands()), 10)
        self.assertIn("growth-report", COMMANDS)
