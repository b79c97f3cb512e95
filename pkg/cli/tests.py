"""
Tests unitaires de la ligne de commande.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pandas as pd
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from hyperwave.core.exceptions import BranchTrackingError, UsageError
from oracle.models import VerificationReport
from cli.codes import CommandResponse, ExitCodes
from cli.models import CommandResult, OutputFormat, Subcommand
from cli.serializers import RunConfigSerializer
from cli.services import render, sidecar_path


def invoke(name, *args):
    stdout, stderr = StringIO(), StringIO()
    call_command(name, *args, stdout=stdout, stderr=stderr)
    return stdout.getvalue(), stderr.getvalue()


class TestRunConfigSerializer(SimpleTestCase):
    """Tests de la validation des options."""

    def test_defaults(self):
        config = RunConfigSerializer(data={'subcommand': 'critical', 'gamma': 0.2}).to_config()
        self.assertEqual(config.subcommand, Subcommand.CRITICAL)
        self.assertIsNone(config.N)
        self.assertEqual(config.lambda_scale, 1.0)
        self.assertEqual(config.output_format, OutputFormat.CSV)
        self.assertEqual(config.n, 6)

    def test_default_range_and_count(self):
        config = RunConfigSerializer(data={'subcommand': 'scatter', 'strength': 20.0}).to_config()
        self.assertEqual(config.value_range, (0.01, 40.0))
        self.assertEqual(config.count, 200)

    def test_missing_required_option(self):
        with self.assertRaises(UsageError) as ctx:
            RunConfigSerializer(data={'subcommand': 'pspec', 'gamma': 0.2}).to_config()
        self.assertIn('--epsilon', ctx.exception.message)

    def test_invalid_values(self):
        invalid = [
            {'subcommand': 'potential', 'strength': 1.0, 'lambda_scale': 0.0},
            {'subcommand': 'pspec', 'epsilon': 0.5},
            {'subcommand': 'scatter', 'strength': 1.0, 'value_range': [-1.0, 1.0]},
            {'subcommand': 'smap', 'value_range': [-1.0, 0.5]},
            {'subcommand': 'potential', 'strength': 1.0, 'value_range': [2.0, 1.0]},
            {'subcommand': 'espec', 'strength': 0.0},
            {'subcommand': 'critical', 'N': 1},
        ]
        for data in invalid:
            with self.subTest(data=data):
                with self.assertRaises(UsageError) as ctx:
                    RunConfigSerializer(data=data).to_config()
                self.assertEqual(ctx.exception.exit_status, ExitCodes.USAGE_ERROR)


class TestRender(SimpleTestCase):
    """Tests du rendu CSV / JSON."""

    def setUp(self):
        self.result = CommandResult(
            rows=[{'x': -1.0, 'U': 0.123456789012345}, {'x': 1.0, 'U': -2.5e-11}],
            columns=['x', 'U'],
        )

    def test_csv_header_and_digits(self):
        lines = render(self.result, OutputFormat.CSV).splitlines()
        self.assertEqual(lines[0], 'x,U')
        self.assertEqual(lines[1], '-1,0.123456789012')

    def test_csv_and_json_encode_the_same_values(self):
        table = pd.read_csv(StringIO(render(self.result, OutputFormat.CSV)))
        records = json.loads(render(self.result, OutputFormat.JSON))
        np.testing.assert_allclose(table['U'].to_numpy(), [r['U'] for r in records], rtol=1e-12)

    def test_sidecar_path(self):
        self.assertEqual(sidecar_path('/tmp/out/ground.csv'), Path('/tmp/out/ground.meta.json'))


class TestCommandResponse(SimpleTestCase):

    def test_project_error_keeps_status(self):
        status, payload = CommandResponse.handle_exception(UsageError("option invalide"))
        self.assertEqual(status, ExitCodes.USAGE_ERROR)
        self.assertEqual(payload['error_code'], 'USAGE_ERROR')

    def test_unexpected_error_is_numeric_failure(self):
        status, payload = CommandResponse.handle_exception(RuntimeError("boom"))
        self.assertEqual(status, ExitCodes.NUMERIC_FAILURE)
        self.assertEqual(payload['error_code'], 'INTERNAL_ERROR')

    def test_success_is_logged_with_code(self):
        with self.assertLogs('cli.codes', level='INFO') as logs:
            status = CommandResponse.success('count', 1)
        self.assertEqual(status, ExitCodes.SUCCESS)
        self.assertIn('[SUCCESS]', logs.output[0])

    def test_output_file_is_logged_with_code(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'potential.csv'
            with self.assertLogs('cli.services', level='INFO') as logs:
                invoke('potential', '--strength', '1', '--count', '5', '--out', str(out))
            self.assertTrue(out.exists())
        self.assertTrue(any('[OUTPUT_WRITTEN]' in line for line in logs.output))


class TestCommands(SimpleTestCase):
    """Tests de bout en bout des sous-commandes."""

    def test_potential_two_points(self):
        stdout, _ = invoke('potential', '--gamma', '0', '--strength', '1', '--range', '-6', '6', '--count', '2')
        table = pd.read_csv(StringIO(stdout))
        self.assertEqual(list(table.columns), ['x', 'U'])
        self.assertEqual(len(table), 2)
        u = table['U'].to_numpy()
        self.assertTrue(np.all(np.abs(u) < 1e-4))
        self.assertAlmostEqual(u[0], -u[1], places=15)

    def test_potential_is_deterministic(self):
        args = ('--gamma', '0.3', '--strength', '-2', '--lambda', '1.5')
        self.assertEqual(invoke('potential', *args)[0], invoke('potential', *args)[0])

    def test_potential_formats_agree(self):
        args = ('--gamma', '0.3', '--strength', '-2', '--count', '25')
        table = pd.read_csv(StringIO(invoke('potential', *args)[0]))
        records = json.loads(invoke('potential', *args, '--format', 'json')[0])
        np.testing.assert_allclose(table['U'].to_numpy(), [r['U'] for r in records], rtol=1e-12, atol=0)

    def test_critical_matches_table(self):
        stdout, _ = invoke('critical', '--gamma', '0.2', '--n', '3')
        table = pd.read_csv(StringIO(stdout))
        self.assertEqual(list(table.columns), ['gamma', 'side', 'n', 'C_hat'])
        with open(settings.SAMPLE_DATA_DIR / 'critical_table.json', encoding='utf-8') as handle:
            reference = json.load(handle)['values']['0.2']
        for side in ('positive', 'negative'):
            values = table[table['side'] == side].sort_values('n')['C_hat'].to_numpy()
            np.testing.assert_allclose(values, reference[side][:3], rtol=2e-3, atol=1e-9)

    def test_count(self):
        table = pd.read_csv(StringIO(invoke('count', '--gamma', '0.2', '--strength', '-10')[0]))
        self.assertEqual(list(table.columns), ['C', 'gamma', 'count'])
        self.assertEqual(int(table['count'][0]), 2)

    def test_espec_header(self):
        table = pd.read_csv(StringIO(invoke('espec', '--gamma', '0.2', '--strength', '20')[0]))
        self.assertEqual(list(table.columns), ['C', 'gamma', 'n', 'epsilon', 'mu'])
        self.assertEqual(len(table), 1)
        self.assertLess(table['epsilon'][0], 0.0)

    def test_wavefunction_writes_sidecar(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'ground.csv'
            invoke('wavefunction', '--gamma', '0.2', '--strength', '20', '--count', '101', '--out', str(out))
            table = pd.read_csv(out)
            meta = json.loads((Path(tmp) / 'ground.meta.json').read_text(encoding='utf-8'))
        self.assertEqual(list(table.columns), ['x', 'psi'])
        self.assertEqual(len(table), 101)
        for key in ('mu', 'omega', 'N_star', 'residual'):
            self.assertIn(key, meta)
        self.assertLess(meta['residual'], 1e-6)

    def test_wavefunction_sidecar_on_stderr(self):
        _, stderr = invoke('wavefunction', '--gamma', '0.2', '--strength', '20', '--count', '11')
        self.assertIn('"N_star"', stderr)

    def test_scatter(self):
        stdout, _ = invoke('scatter', '--gamma', '0.2', '--strength', '20', '--range', '0.5', '10', '--count', '5')
        table = pd.read_csv(StringIO(stdout))
        self.assertEqual(list(table.columns), ['epsilon', 'R2', 'T2'])
        np.testing.assert_allclose(table['R2'] + table['T2'], 1.0, atol=1e-8)

    def test_verify(self):
        report = json.loads(invoke('verify', '--gamma', '0.2', '--strength', '20')[0])
        self.assertTrue(report['counts_match'])
        self.assertTrue(report['passed'])
        self.assertIn('max_energy_diff', report)
        self.assertIn('max_wavefunction_diff', report)

    def test_smap_header(self):
        stdout, _ = invoke('smap', '--gamma', '0.2', '--range', '-1', '-0.1', '--count', '4',
                           '--branches', '2', '--N', '400')
        table = pd.read_csv(StringIO(stdout))
        self.assertEqual(list(table.columns), ['gamma', 'side', 'k', 'epsilon', 'C'])
        self.assertEqual(len(table), 2 * 2 * 4)


class TestExitStatus(SimpleTestCase):
    """Correspondance entre erreurs et statut de sortie."""

    def assertStatus(self, status, name, *args):
        with self.assertRaises(CommandError) as ctx:
            invoke(name, *args)
        self.assertEqual(ctx.exception.returncode, status)
        return ctx.exception

    def test_usage_errors(self):
        error = self.assertStatus(ExitCodes.USAGE_ERROR, 'pspec', '--gamma', '0.2')
        self.assertIn('--epsilon', str(error))
        self.assertStatus(ExitCodes.USAGE_ERROR, 'scatter', '--strength', '20', '--range', '-1', '1')
        self.assertStatus(ExitCodes.USAGE_ERROR, 'potential', '--strength', '1', '--lambda', '-1')

    def test_missing_state_is_usage_error(self):
        self.assertStatus(ExitCodes.USAGE_ERROR, 'wavefunction', '--gamma', '0.2', '--strength', '20',
                          '--state', '3')

    def test_numeric_failure(self):
        with patch('cli.services.energy_spectrum', side_effect=BranchTrackingError("entrelacement violé")):
            self.assertStatus(ExitCodes.NUMERIC_FAILURE, 'espec', '--gamma', '0.2', '--strength', '20')

    def test_failed_verification_still_reports(self):
        report = VerificationReport(
            strength=20.0, gamma=0.2, tolerance=1e-9,
            counts={'spectra': 1, 'spectra_conjugate': 1, 'oracle': 2, 'oracle_conjugate': 2},
            max_energy_diff=0.0, max_oracle_diff=0.0, max_wavefunction_diff=0.0, counts_match=False,
        )
        stdout = StringIO()
        with patch('cli.services.cpgamma_verify', return_value=report):
            with self.assertRaises(CommandError) as ctx:
                call_command('verify', '--gamma', '0.2', '--strength', '20', stdout=stdout, stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, ExitCodes.NUMERIC_FAILURE)
        self.assertFalse(json.loads(stdout.getvalue())['passed'])
