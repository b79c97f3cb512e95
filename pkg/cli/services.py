"""
Exécution des sous-commandes : appel des services de calcul, sérialisation
des lignes et écriture des sorties CSV ou JSON.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, Optional, TextIO

import numpy as np
import pandas as pd
from django.conf import settings
from rest_framework.renderers import JSONRenderer

from hyperwave.core.exceptions import UsageError
from potential.models import PotentialParams
from potential.serializers import PotentialSampleSerializer
from potential.services import sample_grid
from spectra.serializers import (
    ParameterSpectrumRowSerializer, CriticalRowSerializer, EnergyRowSerializer,
    CountSerializer, SpectralMapRowSerializer
)
from spectra.services import (
    parameter_spectrum, critical_strengths, count_bound_states, energy_spectrum, spectral_map
)
from boundstate.serializers import WavefunctionSampleSerializer, WavefunctionSummarySerializer
from boundstate.services import build_wavefunction, evaluate_wavefunction, hamiltonian_residual
from oracle.serializers import ScatterPointSerializer, VerificationReportSerializer
from oracle.services import transmission_reflection, cpgamma_verify
from .codes import ExitCodes, ResponseCodes, ResponseMessages
from .models import RunConfig, CommandResult, Subcommand, OutputFormat

logger = logging.getLogger(__name__)


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def _params(config: RunConfig) -> PotentialParams:
    return PotentialParams(config.strength, config.gamma, config.lambda_scale)


def _serialize(serializer_class, rows) -> list:
    return [dict(item) for item in serializer_class(list(rows), many=True).data]


def _table(serializer_class, rows) -> CommandResult:
    return CommandResult(rows=_serialize(serializer_class, rows), columns=list(serializer_class().fields))


def _potential(config: RunConfig) -> CommandResult:
    low, high = config.value_range
    frame = sample_grid(_params(config), low, high, config.count)
    return _table(PotentialSampleSerializer, frame.to_dict('records'))


def _pspec(config: RunConfig) -> CommandResult:
    spectrum = parameter_spectrum(config.epsilon, config.gamma, config.N, config.branch, config.delta)
    return _table(ParameterSpectrumRowSerializer, spectrum.rows())


def _critical(config: RunConfig) -> CommandResult:
    N = config.N if config.N is not None else _numerics().get('TABLE_TRUNCATION', 8000)
    return _table(CriticalRowSerializer, critical_strengths(config.gamma, config.n, N, config.delta).rows())


def _espec(config: RunConfig) -> CommandResult:
    spectrum = energy_spectrum(config.strength, config.gamma, config.eps_floor, config.N, config.delta)
    return _table(EnergyRowSerializer, spectrum.rows())


def _count(config: RunConfig) -> CommandResult:
    count = count_bound_states(config.strength, config.gamma, config.N, config.delta)
    return _table(CountSerializer, [{'C': config.strength, 'gamma': config.gamma, 'count': count}])


def _wavefunction(config: RunConfig) -> CommandResult:
    spectrum = energy_spectrum(config.strength, config.gamma, config.eps_floor, config.N, config.delta)
    if config.state >= spectrum.count:
        raise UsageError(
            f"--state {config.state} : le potentiel (C={config.strength}, gamma={config.gamma}) "
            f"n'a que {spectrum.count} états liés",
            {'state': config.state, 'count': spectrum.count}
        )
    epsilon = float(spectrum.energies[config.state])
    ws = build_wavefunction(config.strength, config.gamma, epsilon, config.lambda_scale)

    low, high = config.value_range
    x = np.linspace(low, high, config.count)
    result = _table(WavefunctionSampleSerializer,
                    ({'x': xv, 'psi': pv} for xv, pv in zip(x, evaluate_wavefunction(ws, x))))
    result.sidecar = dict(WavefunctionSummarySerializer({
        'C': config.strength,
        'gamma': config.gamma,
        'lambda_scale': config.lambda_scale,
        'state': config.state,
        'epsilon': epsilon,
        'mu': ws.mu,
        'omega': ws.omega,
        'N_star': ws.n_star,
        'residual': hamiltonian_residual(ws),
    }).data)
    return result


def _scatter(config: RunConfig) -> CommandResult:
    low, high = config.value_range
    points = transmission_reflection(_params(config), np.linspace(low, high, config.count))
    return _table(ScatterPointSerializer, points)


def _verify(config: RunConfig) -> CommandResult:
    tol = config.tol if config.tol is not None else 1e-9
    report = cpgamma_verify(_params(config), tol=tol)
    if not report.passed:
        logger.error(f"Vérification CPγ échouée pour C={config.strength}, gamma={config.gamma}")
    return CommandResult(
        document=dict(VerificationReportSerializer(report).data),
        exit_status=ExitCodes.SUCCESS if report.passed else ExitCodes.NUMERIC_FAILURE,
    )


def _smap(config: RunConfig) -> CommandResult:
    low, high = config.value_range
    curves = spectral_map(config.gamma, np.linspace(low, high, config.count), config.N, config.branches)
    return _table(SpectralMapRowSerializer, curves.rows())


DISPATCH: Dict[Subcommand, Callable[[RunConfig], CommandResult]] = {
    Subcommand.POTENTIAL: _potential,
    Subcommand.PSPEC: _pspec,
    Subcommand.CRITICAL: _critical,
    Subcommand.ESPEC: _espec,
    Subcommand.COUNT: _count,
    Subcommand.WAVEFUNCTION: _wavefunction,
    Subcommand.SCATTER: _scatter,
    Subcommand.VERIFY: _verify,
    Subcommand.SMAP: _smap,
}


def run(config: RunConfig) -> CommandResult:
    """
    Exécute la sous-commande décrite par config.

    Returns:
        CommandResult: lignes (ou document) prêtes à être rendues
    """
    logger.info(f"Sous-commande {config.subcommand.value} : gamma={config.gamma}, C={config.strength}")
    return DISPATCH[config.subcommand](config)


def render(result: CommandResult, output_format: OutputFormat) -> str:
    """
    Rend le résultat en texte.

    Le CSV est produit par pandas avec SERIALIZATION_DIGITS chiffres
    significatifs ; le JSON par le JSONRenderer de DRF. Les deux partent des
    mêmes lignes sérialisées.
    """
    if result.document is not None:
        return JSONRenderer().render(result.document).decode('utf-8') + '\n'
    if output_format == OutputFormat.JSON:
        return JSONRenderer().render(result.rows).decode('utf-8') + '\n'
    digits = _numerics().get('SERIALIZATION_DIGITS', 12)
    frame = pd.DataFrame(result.rows, columns=result.columns)
    return frame.to_csv(index=False, float_format=f'%.{digits}g', lineterminator='\n')


def sidecar_path(out: str) -> Path:
    """Chemin des métadonnées publiées à côté de --out (`<stem>.meta.json`)."""
    path = Path(out)
    return path.with_name(f"{path.stem}.meta.json")


def publish(result: CommandResult, config: RunConfig, stdout: TextIO,
            stderr: Optional[TextIO] = None) -> int:
    """
    Écrit le résultat dans --out (ou sur stdout) et les métadonnées à côté.

    Returns:
        int: Statut de sortie de la sous-commande
    """
    text = render(result, config.output_format)
    if config.out:
        Path(config.out).write_text(text, encoding='utf-8')
        logger.info(f"[{ResponseCodes.OUTPUT_WRITTEN}] {ResponseMessages.OUTPUT_WRITTEN.format(path=config.out)}")
    else:
        stdout.write(text)

    if result.sidecar is not None:
        payload = JSONRenderer().render(result.sidecar).decode('utf-8')
        if config.out:
            path = sidecar_path(config.out)
            path.write_text(payload + '\n', encoding='utf-8')
            logger.info(ResponseMessages.SIDECAR_WRITTEN.format(path=path))
        elif stderr is not None:
            stderr.write(payload + '\n')
    return result.exit_status
