import logging
import os

from commands.utils.formats import indented_entry_to_code, number, write_csv, write_json
import quartic.delta_comb as delta_comb

log = logging.getLogger(__name__)

COLUMNS = ('gamma', 're_r_plus', 'im_r_plus', 're_r_minus', 'im_r_minus')


class DeltaComb:
    """Critical couplings and resonance trajectories of the delta comb."""

    def __init__(self, cli):
        self.cli = cli

    def cmd_delta_comb(self, config):
        paths, criticals = [], []
        for n in config.n:
            critical = delta_comb.critical_gamma(n, config.tol)
            gammas = delta_comb.sweep_gammas(critical, config.steps)
            pairs = [delta_comb.resonance_pair(n, g, config.tol, critical) for g in gammas]
            paths.append(write_csv(os.path.join(config.out, f'delta_comb_n{n}.csv'), COLUMNS,
                                   [pair.as_row() for pair in pairs]))
            criticals.append({'n': n, 'z_n': critical.z_n, 'eps_n': critical.eps_n,
                              'gamma_n': critical.gamma_n, 'Fpp': critical.Fpp,
                              'nu_max': critical.nu_max,
                              'observed_only': n < delta_comb.ASYMPTOTIC_FROM})
            print(f"n = {n}")
            print(indented_entry_to_code([('gamma_n', number(critical.gamma_n)),
                                          ('z_n - 2 pi n', number(critical.eps_n)),
                                          ("F''(z_n)", number(critical.Fpp))]))
        paths.append(write_json(os.path.join(config.out, 'delta_comb.json'), {'critical': criticals}))
        log.info("wrote %s", ', '.join(paths))
        return paths


def setup(cli):
    cli.add_command('delta-comb', DeltaComb(cli).cmd_delta_comb,
                    "critical couplings and resonance trajectories (CSV + JSON)")
