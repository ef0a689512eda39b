"""
Test the command line interface.
"""

import json
import math
from importlib.resources import files
from pathlib import Path

from pytest import CaptureFixture, mark

from npsl.cli import main


def _bundled(name: str) -> str:
    return str(files('npsl') / 'data' / name)


def _write(path: Path, data: object) -> str:
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


def _run(argv: list[str], capsys: CaptureFixture[str]) -> tuple[int, str]:
    code = main(argv)
    return code, capsys.readouterr().out


@mark.parametrize('p, expected', [('1', 1.0), ('inf', -1.0)])
def test_cli_lognorm(p: str, expected: float, capsys: CaptureFixture[str]) -> None:
    """
    Test the log norm of the bundled matrix for one exponent.
    """
    code, out = _run(['lognorm', _bundled('lognorm_example.json'), '--p', p], capsys)
    report = json.loads(out)

    assert code == 0
    assert report['mu'] == expected
    assert report['approximate'] is False
    assert report['mu_conic'] == expected
    assert report['limit_agrees'] is True


def test_cli_lognorm_every_exponent(capsys: CaptureFixture[str]) -> None:
    """
    Test that the default exponents each get an entry, and that other exponents are flagged as approximate.
    """
    code, out = _run(['lognorm', _bundled('lognorm_example.json')], capsys)
    report = json.loads(out)

    assert code == 0
    assert sorted(report) == ['p=1', 'p=2', 'p=inf']

    code, out = _run(['lognorm', _bundled('lognorm_example.json'), '--p', '3'], capsys)

    assert code == 0
    assert json.loads(out)['approximate'] is True


def test_cli_lognorm_pretty(capsys: CaptureFixture[str]) -> None:
    """
    Test the aligned text output.
    """
    code, out = _run(['lognorm', _bundled('lognorm_example.json'), '--p', '1', '--pretty'], capsys)

    assert code == 0
    assert any(line.split() == ['mu', '1.0'] for line in out.splitlines())


@mark.parametrize(
    'argv',
    [
        [],
        ['lognorm', 'missing.json'],
        ['lognorm', 'BUNDLED', '--p', 'huge'],
        ['lognorm', 'BUNDLED', '--p', '0.5'],
        ['lognorm', 'BUNDLED', '--weight', '1,x'],
    ],
)
def test_cli_input_errors(argv: list[str], capsys: CaptureFixture[str]) -> None:
    """
    Test that input errors exit with code 2 and print no report.
    """
    argv = [_bundled('lognorm_example.json') if item == 'BUNDLED' else item for item in argv]
    code, out = _run(argv, capsys)

    assert code == 2
    assert out == ''


def test_cli_show_config(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test that flags override the job file and the job file overrides the defaults.
    """
    job = _write(tmp_path / 'job.json', {'seed': 3, 'trials': 4})
    code, out = _run(['repro', '--job', job, '--seed', '5', '--show-config'], capsys)
    settings = json.loads(out)

    assert code == 0
    assert settings['seed'] == 5
    assert settings['trials'] == 4
    assert settings['dt'] == 1e-3


def test_cli_slemma(capsys: CaptureFixture[str]) -> None:
    """
    Test the dual value of the first worked example and the reported zero-gap hypothesis.
    """
    code, out = _run(['slemma', _bundled('example1.json')], capsys)
    report = json.loads(out)

    assert code == 0
    assert abs(report['beta'] - 1.0) < 1e-9
    assert abs(report['alpha_lower']) < 1e-9
    assert 'hypothesis_violated' in report['zero_gap']


def test_cli_certify_metzler_rate_search(capsys: CaptureFixture[str]) -> None:
    """
    Test the best Metzler rate of the bundled positive system.
    """
    argv = ['certify', _bundled('positive2d.json'), '--paths', 'metzler', '--p', '1', '--rate-search']
    code, out = _run(argv, capsys)
    report = json.loads(out)
    row = report['certificates'][0]

    assert code == 0
    assert row['status'] == 'certified_exact'
    assert abs(row['c'] - (5 - math.sqrt(21)) / 2) < 1e-9
    assert report['aizerman_scan'] is True


def test_cli_certify_failure(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test that exit code 1 means no certificate was issued.
    """
    system = _write(tmp_path / 'system.json', {'A': [[-1]], 'B': [1], 'C': [1], 'kappa': 1.5})
    code, out = _run(['certify', system, '--paths', 'circle,l2_schur'], capsys)
    report = json.loads(out)

    assert code == 1
    assert [row['status'] for row in report['certificates']] == ['failed', 'failed']


def test_cli_certify_unbounded_sector(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test that the Aizerman scan is reported as not applicable for an infinite bound.
    """
    system = _write(tmp_path / 'system.json', {'A': [[-1]], 'B': [1], 'C': [1], 'kappa': 'inf'})
    code, out = _run(['certify', system, '--paths', 'circle'], capsys)
    report = json.loads(out)

    assert code == 1
    assert report['certificates'][0]['status'] == 'refused'
    assert report['aizerman_scan'] == 'requires finite ζ and ϰ'


def test_cli_certify_lmi(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test the lmi_verify path with (H, τ) given in the input.
    """
    data = {'A': [[-1]], 'B': [1], 'C': [1], 'kappa': 0.5, 'lmi': {'H': [[1]], 'tau': 1}}
    code, out = _run(['certify', _write(tmp_path / 'system.json', data), '--paths', 'lmi_verify'], capsys)

    assert code == 0
    assert json.loads(out)['certificates'][0]['status'] == 'certified_exact'


def test_cli_certify_unknown_path(capsys: CaptureFixture[str]) -> None:
    """
    Test that an unknown path is an input error.
    """
    code, _ = _run(['certify', _bundled('positive2d.json'), '--paths', 'sdp'], capsys)

    assert code == 2


@mark.integration_testing
def test_cli_certify_then_validate(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test that a certificate written by certify is validated by simulation.
    """
    certificate = str(tmp_path / 'certificate.json')
    trajectory = tmp_path / 'trajectory.csv'
    system = _bundled('positive2d.json')

    argv = ['certify', system, '--paths', 'metzler', '--p', '1', '--c', '0.2', '--certificate-out', certificate]
    code, _ = _run(argv, capsys)
    assert code == 0

    argv = ['validate', system, '--certificate', certificate, '--trials', '1', '--horizon', '1', '--dt', '0.01']
    code, out = _run([*argv, '--trajectory-out', str(trajectory)], capsys)
    report = json.loads(out)

    assert code == 0
    assert report['passed'] is True
    assert report['verified'] is True
    assert len(report['rows']) == 5
    assert trajectory.read_text(encoding='utf-8').startswith('t,z_1,z_2,w_1,y_1')


def test_cli_validate_input_errors(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test that validate needs a certificate for the same system.
    """
    certificate = str(tmp_path / 'certificate.json')
    argv = ['certify', _bundled('positive2d.json'), '--paths', 'metzler', '--p', '1', '--certificate-out', certificate]
    _run(argv, capsys)

    code, _ = _run(['validate', _bundled('positive2d.json')], capsys)
    assert code == 2

    code, _ = _run(['validate', _bundled('positive2d_k6.json'), '--certificate', certificate], capsys)
    assert code == 2


@mark.integration_testing
def test_cli_repro(tmp_path: Path, capsys: CaptureFixture[str]) -> None:
    """
    Test the reproduction suite with small sample counts.
    """
    job = _write(
        tmp_path / 'job.json',
        {'repro_fuzz': 3, 'repro_families': 2, 'repro_simulations': 1, 'horizon': 1.0, 'dt': 0.01},
    )
    code, out = _run(['repro', '--job', job], capsys)
    report = json.loads(out)

    assert code == 0
    assert report['passed'] is True
    assert len(report['checks']) == 12
