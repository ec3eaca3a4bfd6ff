import logging
import math
import os

from commands.utils.formats import entry_to_code, number, write_csv, write_json
from quartic.asymptotics import asymptotic_constants, check_eigenvalue_asymptotics, check_resonance_asymptotics

log = logging.getLogger(__name__)

COLUMNS = ('n', 'lambda_minus', 'lambda_plus', 'predicted', 'residual', 'normalized_residual',
           'gap', 'predicted_gap', 'gap_residual')


def _rows(table):
    # complex resonances are reported by their real parts, the gap column keeps |r+ - r-|
    return [{k: (v.real if isinstance(v, complex) else v) for k, v in row.as_dict().items()}
            for row in table.rows]


def identity_rows(potential, n_values):
    """alpha(-4 (pi n)^4) and beta((pi n)^4) next to their Fourier values."""
    rows = []
    for n in n_values:
        vn2 = abs(potential.fourier_coefficient(n)) ** 2
        alpha = asymptotic_constants(potential, -4 * (math.pi * n) ** 4).alpha_combination()
        beta = asymptotic_constants(potential, (math.pi * n) ** 4).beta_combination()
        rows.append({'n': n, 'alpha': alpha, 'alpha_fourier': vn2 / (2 * math.pi * n) ** 6,
                     'beta': beta, 'beta_fourier': (-1) ** n * vn2 / (16 * (math.pi * n) ** 6)})
    return rows


class Asymptotics:
    """Residual tables for the high-energy eigenvalue and resonance laws."""

    def __init__(self, cli):
        self.cli = cli

    def cmd_asymptotics(self, config):
        potential = config.build_potential()
        n_values = range(config.n_range[0], config.n_range[1] + 1)
        eig = check_eigenvalue_asymptotics(potential, n_values, backend=config.backend)
        res = check_resonance_asymptotics(potential, n_values, backend=config.backend)
        paths = [write_csv(os.path.join(config.out, 'eigenvalue_asymptotics.csv'), COLUMNS, _rows(eig)),
                 write_csv(os.path.join(config.out, 'resonance_asymptotics.csv'), COLUMNS, _rows(res))]
        summary = {
            'eigenvalues': {'max_normalized_residual': eig.max_normalized_residual,
                            'decay_slope': eig.decay_slope()},
            'resonances': {'max_normalized_residual': res.max_normalized_residual,
                           'decay_slope': res.decay_slope()},
            'identities': identity_rows(potential, n_values),
        }
        paths.append(write_json(os.path.join(config.out, 'asymptotics.json'), summary))
        print(entry_to_code([
            ('eigenvalue residual * n^1.5', number(eig.max_normalized_residual)),
            ('resonance residual * n^1.5', number(res.max_normalized_residual)),
        ]))
        log.info("wrote %s", ', '.join(paths))
        return paths


def setup(cli):
    cli.add_command('asymptotics', Asymptotics(cli).cmd_asymptotics,
                    "high-energy residual tables (CSV) and constant identities (JSON)")
