import logging
import os

from commands.utils import cli_colors as colors
from commands.utils.formats import Plural, entry_to_code, number, write_json
from quartic import spectrum

log = logging.getLogger(__name__)


def _labels(labelled):
    return {f"{n}{sign}": lam for (n, sign), lam in sorted(labelled.items())}


def spectral_report(potential, config):
    """Eigenvalues, resonances, bands and gaps as one JSON-ready dict."""
    report = {'potential': potential.to_spec(),
              'region_index': spectrum.region_index(potential)}
    eig = spectrum.eigenvalues(potential, config.n_max, config.tol, config.backend)
    report['eigenvalues'] = {
        'periodic': eig.periodic, 'periodic_multiplicity': eig.periodic_multiplicity,
        'antiperiodic': eig.antiperiodic, 'antiperiodic_multiplicity': eig.antiperiodic_multiplicity,
        'labelled': _labels(eig.labelled()),
    }
    res = spectrum.resonances(potential, config.n_max, config.tol, config.backend)
    report['resonances'] = {
        'real': res.real, 'real_multiplicity': res.real_multiplicity,
        'complex': [r for upper in res.complex for r in (upper, upper.conjugate())],
        'r0_minus': res.r0_minus,
        'pairs': {str(n): pair for n, pair in sorted(res.pairs.items())},
    }
    report['regions'] = eig.regions + res.regions
    lo, hi = config.lam_range
    structure = spectrum.band_scan(potential, lo, hi, config.grid, config.tol, config.backend)
    report['bands'] = [{'lo': b.lo, 'hi': b.hi, 'mult': b.multiplicity, 'monotone': b.monotone}
                       for b in structure.bands]
    report['gaps'] = [{'lo': g.lo, 'hi': g.hi, 'kind': g.kind, 'lo_label': g.lo_label,
                       'hi_label': g.hi_label} for g in structure.gaps]
    report['closed_gaps'] = structure.closed_gaps
    return report


class Spectrum:
    """Periodic, antiperiodic and resonance spectra with the band structure."""

    def __init__(self, cli):
        self.cli = cli

    def cmd_spectrum(self, config):
        potential = config.build_potential()
        report = spectral_report(potential, config)
        path = write_json(os.path.join(config.out, 'spectrum.json'), report)
        print(entry_to_code([
            ('periodic', Plural(eigenvalue=len(report['eigenvalues']['periodic']))),
            ('antiperiodic', Plural(eigenvalue=len(report['eigenvalues']['antiperiodic']))),
            ('resonances', Plural(pair=len(report['resonances']['pairs']))),
            ('r0-', number(report['resonances']['r0_minus'])),
            ('bands', Plural(band=len(report['bands']))),
        ]))
        for band in report['bands']:
            print(colors.paint(f"  [{number(band['lo'])}, {number(band['hi'])}] x{band['mult']}",
                               colors.multiplicity.of(band['mult'])))
        log.info("wrote %s", path)
        return [path]


def setup(cli):
    cli.add_command('spectrum', Spectrum(cli).cmd_spectrum,
                    "eigenvalues, resonances and bands (JSON report)")
