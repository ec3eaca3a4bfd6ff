import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from commands.utils.formats import write_csv
from quartic.traces import branches, trace_bundle

log = logging.getLogger(__name__)

COLUMNS = ('lambda', 'T1', 'rho', 'Delta1_re', 'Delta1_im', 'Delta2_re', 'Delta2_im',
           'Dplus', 'Dminus')


def trace_row(potential, lam, backend='auto'):
    bundle = trace_bundle(potential, float(lam), backend)
    pair = branches(bundle)
    return {'lambda': float(lam), 'T1': bundle.T1.real, 'rho': bundle.rho.real,
            'Delta1_re': pair.delta1.real, 'Delta1_im': pair.delta1.imag,
            'Delta2_re': pair.delta2.real, 'Delta2_im': pair.delta2.imag,
            'Dplus': bundle.Dplus.real, 'Dminus': bundle.Dminus.real}


class Trace:
    """Trace functions and Lyapunov branches on a real lambda grid."""

    def __init__(self, cli):
        self.cli = cli

    def cmd_trace(self, config):
        potential = config.build_potential()
        grid = np.linspace(config.lam_range[0], config.lam_range[1], config.grid)
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda lam: trace_row(potential, lam, config.backend), grid))
        path = write_csv(os.path.join(config.out, 'trace.csv'), COLUMNS, rows)
        log.info("wrote %d rows to %s", len(rows), path)
        return [path]


def setup(cli):
    cli.add_command('trace', Trace(cli).cmd_trace,
                    "T1, rho, Delta_1,2 and D+- on the lambda grid (CSV)")
