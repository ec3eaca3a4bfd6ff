import logging
import os

from commands.utils.formats import entry_to_code, number, write_csv, write_json
from quartic import small_gamma

log = logging.getLogger(__name__)

COLUMNS = ('gamma', 'r0_minus', 'lambda0_plus', 'gap', 'predicted_leading', 'predicted_gap')


class SmallGamma:
    """Lowest band of gamma V for a list of small couplings."""

    def __init__(self, cli):
        self.cli = cli

    def cmd_small_gamma(self, config):
        potential = config.build_potential()
        backend = 'hill' if config.backend == 'auto' else config.backend
        rows, slope = small_gamma.gap_law(potential, config.gammas, backend)
        constants = small_gamma.small_gamma_constants(potential)
        check = small_gamma.lowest_band_multiplicity(potential, config.gammas[0], backend=backend)
        paths = [write_csv(os.path.join(config.out, 'small_gamma.csv'), COLUMNS,
                           [row.as_dict() for row in rows])]
        summary = {'constants': constants, 'leading': constants.leading, 'gap_slope': slope,
                   'multiplicity': {'gamma': config.gammas[0], 'ok': check.ok,
                                    'interior': check.interior, 'below': check.below,
                                    'above': check.above}}
        paths.append(write_json(os.path.join(config.out, 'small_gamma.json'), summary))
        print(entry_to_code([
            ('A (integral)', number(constants.A_integral)),
            ('A (Fourier)', number(constants.A_fourier)),
            ('gap slope', number(slope)),
            ('multiplicity 4', 'yes' if check.ok else 'no'),
        ]))
        log.info("wrote %s", ', '.join(paths))
        return paths


def setup(cli):
    cli.add_command('small-gamma', SmallGamma(cli).cmd_small_gamma,
                    "lowest-band endpoints and the gamma^4 gap law (CSV + JSON)")
