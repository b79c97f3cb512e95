"""
Tests des briques partagées : exceptions, pool de calcul et sérialisation.
"""

from django.test import SimpleTestCase, override_settings

from hyperwave.core.exceptions import (
    HyperwaveError, DomainError, UsageError, GridPreconditionError,
    NumericError, DivergenceError, QuadratureError
)
from hyperwave.core.serializers import significant, SignificantFloatField
from hyperwave.core.services import ComputeExecutor


class TestExceptions(SimpleTestCase):

    def test_exit_status(self):
        self.assertEqual(DomainError("x").exit_status, 2)
        self.assertEqual(UsageError("x").exit_status, 2)
        self.assertEqual(GridPreconditionError("x").exit_status, 2)
        self.assertEqual(NumericError("x").exit_status, 1)
        self.assertEqual(DivergenceError("x").exit_status, 1)

    def test_builtin_bases(self):
        self.assertIsInstance(DomainError("x"), ValueError)
        self.assertIsInstance(QuadratureError("x"), ArithmeticError)
        self.assertIsInstance(UsageError("x"), HyperwaveError)

    def test_as_dict(self):
        payload = DivergenceError("la série diverge", {'N_star': 12}).as_dict()
        self.assertEqual(payload['error_code'], 'SERIES_DIVERGENCE')
        self.assertEqual(payload['details'], {'N_star': 12})
        self.assertNotIn('details', UsageError("x").as_dict())


class TestComputeExecutor(SimpleTestCase):
    """Tests du pool partagé."""

    def tearDown(self):
        ComputeExecutor.reset()

    def test_singleton(self):
        self.assertIs(ComputeExecutor(), ComputeExecutor())

    @override_settings(HYPERWAVE_THREADS=4)
    def test_order_preserved_in_parallel(self):
        ComputeExecutor.reset()
        executor = ComputeExecutor()
        self.assertTrue(executor.is_parallel)
        self.assertEqual(executor.map_ordered(lambda v: v * v, range(200)), [v * v for v in range(200)])
        self.assertEqual(executor.get_status()['max_workers'], 4)

    @override_settings(HYPERWAVE_THREADS=1)
    def test_sequential(self):
        ComputeExecutor.reset()
        executor = ComputeExecutor()
        self.assertFalse(executor.is_parallel)
        self.assertEqual(executor.map_ordered(str, [3, 1, 2]), ['3', '1', '2'])


class TestSignificant(SimpleTestCase):

    def test_twelve_digits(self):
        self.assertEqual(significant(9.4312345678901234), 9.43123456789)
        self.assertEqual(significant(-1.0 / 3.0), -0.333333333333)

    def test_non_finite_untouched(self):
        self.assertEqual(significant(float('inf')), float('inf'))

    def test_field(self):
        self.assertEqual(SignificantFloatField().to_representation(2.0 / 3.0), 0.666666666667)
