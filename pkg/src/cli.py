"""
Command-line front end. Every subcommand writes CSV (header row, 9
significant digits, '#' summary lines) to --out or standard output.

Units: hbar = k = 1; energies in units of |J| (XX chain) or t (Hubbard).
"""
import argparse
import logging
from typing import Optional, Sequence

import numpy as np

from config.config import Config
from qinfo.capacity import (
    CouplingSpec,
    SystemKind,
    f_entropy,
    f_geometric,
    find_p0,
    maximize_rate,
    psi_E,
    rate_two_qubit,
)
from qinfo.discord import (
    discord_report,
    example_state,
    geometric_discord_mn,
    werner_discord,
    werner_state,
    zero_discord_witness,
)
from qinfo.errors import ConvergenceError, ParameterRangeError, QInfoError, StateFormatError
from qinfo.fermion import (
    alpha_from_interaction,
    dimer_entanglements,
    maximize_partition_entanglement,
    number_sector,
    trimer_entanglements,
)
from qinfo.optimize import OptimizationReport
from qinfo.qstate import PartitionSpec, bloch_decompose, from_pure, parse_density_matrix
from qinfo.thermal_xx import XXParams, sweep_field, sweep_monogamy, sweep_temperature
from utils.helpers import open_output, write_csv, write_summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3

# geometric E below this is reported in the `negative` column
NEGATIVE_TOL = 1e-9

TWO_QUBITS = PartitionSpec.qudits((2, 2))

MONOGAMY_COLUMNS = ['B1', 'B2', 'T', 'EN_AB', 'QD_AB', 'CC_AB', 'S_A', 'EN_AE', 'QD_AE', 'CC_AE',
                    'identity_residual']


class _ArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so bad flags share the exit code of bad values."""

    def error(self, message):
        raise ParameterRangeError(message)


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ParameterRangeError(f"steps must be >= 1, got {steps}")
    if hi < lo:
        raise ParameterRangeError(f"empty range [{lo}, {hi}]")
    return np.linspace(lo, hi, steps)


class QInfoCLI:
    def __init__(self, config: Config):
        self.config = config
        self.parser = self._build_parser()

        # (command, subcommand) -> handler
        self.command_handlers = {
            ('capacity', 'two-qubit'): self._handle_capacity_two_qubit,
            ('capacity', 'qutrit'): lambda args: self._handle_capacity_search(args, SystemKind.TWO_QUTRIT),
            ('capacity', 'three-qubit'): lambda args: self._handle_capacity_search(args, SystemKind.THREE_QUBIT),
            ('hubbard', 'dimer'): self._handle_hubbard_dimer,
            ('hubbard', 'trimer'): self._handle_hubbard_trimer,
            ('hubbard', 'maximize'): self._handle_hubbard_maximize,
            ('xx', 'sweep-field'): self._handle_xx_sweep_field,
            ('xx', 'sweep-temp'): self._handle_xx_sweep_temp,
            ('xx', 'monogamy'): self._handle_xx_monogamy,
            ('discord', 'geometric'): self._handle_discord_geometric,
            ('discord', 'werner'): self._handle_discord_werner,
            ('discord', 'examples'): self._handle_discord_examples,
        }

    def _build_parser(self) -> argparse.ArgumentParser:
        common = _ArgumentParser(add_help=False)
        common.add_argument('--out', default=None, help='output file (default: standard output)')
        common.add_argument('--threads', type=int, default=None,
                            help='worker threads for restarts and sweeps (overrides QINFO_THREADS)')

        search = _ArgumentParser(add_help=False)
        search.add_argument('--restarts', type=int, default=None)
        search.add_argument('--seed', type=int, default=None)

        parser = _ArgumentParser(
            prog='qinfo',
            description='Entanglement capacities, fermionic entanglement, thermal discord and '
                        'geometric discord. Units: hbar = k = 1, energies in |J| or t.',
        )
        commands = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

        capacity = commands.add_parser('capacity', help='entanglement-generation capacity')
        cap = capacity.add_subparsers(dest='subcommand', required=True, parser_class=_ArgumentParser)
        p = cap.add_parser('two-qubit', parents=[common, search])
        p.add_argument('--mu1', type=float, required=True)
        p.add_argument('--mu2', type=float, required=True)
        p.add_argument('--mu3', type=float, required=True)
        p.add_argument('--sweep-p', type=int, default=51, help='number of p points in [0, 1/2]')
        p.add_argument('--maximize', action='store_true', help='also run the numerical search')
        p.add_argument('--measure', choices=['geometric', 'entropy'], default='geometric')
        for name in ('qutrit', 'three-qubit'):
            p = cap.add_parser(name, parents=[common, search])
            p.add_argument('--isotropic', action='store_true')
            p.add_argument('--mu', type=float, default=1.0, help='isotropic coupling strength')
            p.add_argument('--mu-values', default=None,
                           help='comma-separated strengths (8 for qutrit, 9 row-major AB,BC,AC for three-qubit)')

        hubbard = commands.add_parser('hubbard', help='Hubbard dimer and trimer')
        hub = hubbard.add_subparsers(dest='subcommand', required=True, parser_class=_ArgumentParser)
        p = hub.add_parser('dimer', parents=[common])
        p.add_argument('--alpha-min', type=float, default=1.0)
        p.add_argument('--alpha-max', type=float, default=10.0)
        p.add_argument('--steps', type=int, default=50)
        p.add_argument('--u-over-t', action='store_true',
                       help='read --alpha-min/--alpha-max as a U/t range instead')
        p = hub.add_parser('trimer', parents=[common])
        p.add_argument('--beta-min', type=float, default=0.0)
        p.add_argument('--beta-max', type=float, default=50.0)
        p.add_argument('--steps', type=int, default=51)
        p = hub.add_parser('maximize', parents=[common, search])
        p.add_argument('--modes', type=int, required=True)
        p.add_argument('--particles', type=int, required=True)
        p.add_argument('--partition', required=True, help="mode groups, e.g. '0,1;2,3'")

        xx = commands.add_parser('xx', help='two-qubit XX chain at thermal equilibrium')
        xsub = xx.add_subparsers(dest='subcommand', required=True, parser_class=_ArgumentParser)
        p = xsub.add_parser('sweep-field', parents=[common])
        p.add_argument('--temp', type=float, required=True)
        p.add_argument('--ratio', type=float, default=1.0, help='B2 = -ratio * B1')
        p.add_argument('--uniform', action='store_true', help='B2 = B1')
        p.add_argument('--b1-min', type=float, default=0.0)
        p.add_argument('--b1-max', type=float, default=4.0)
        p.add_argument('--steps', type=int, default=81)
        p.add_argument('--j', type=float, default=1.0)
        p = xsub.add_parser('sweep-temp', parents=[common])
        p.add_argument('--b1', type=float, required=True)
        p.add_argument('--b2', type=float, required=True)
        p.add_argument('--t-min', type=float, default=0.05)
        p.add_argument('--t-max', type=float, default=4.0)
        p.add_argument('--steps', type=int, default=80)
        p.add_argument('--j', type=float, default=1.0)
        p = xsub.add_parser('monogamy', parents=[common])
        mode = p.add_mutually_exclusive_group(required=True)
        mode.add_argument('--temp', type=float, help='sweep B1 at this temperature')
        mode.add_argument('--b1', type=float, help='sweep T at this B1')
        p.add_argument('--ratio', type=float, default=1.0, help='B2 = -ratio * B1')
        p.add_argument('--b1-min', type=float, default=0.0)
        p.add_argument('--b1-max', type=float, default=4.0)
        p.add_argument('--t-min', type=float, default=0.05)
        p.add_argument('--t-max', type=float, default=4.0)
        p.add_argument('--steps', type=int, default=81)
        p.add_argument('--j', type=float, default=1.0)

        discord = commands.add_parser('discord', help='geometric discord')
        dsub = discord.add_subparsers(dest='subcommand', required=True, parser_class=_ArgumentParser)
        p = dsub.add_parser('geometric', parents=[common, search])
        p.add_argument('--state-file', required=True)
        p.add_argument('--bruteforce', action='store_true')
        p = dsub.add_parser('werner', parents=[common])
        p.add_argument('--m', type=int, required=True)
        p.add_argument('--z-min', type=float, default=-1.0)
        p.add_argument('--z-max', type=float, default=1.0)
        p.add_argument('--steps', type=int, default=41)
        p = dsub.add_parser('examples', parents=[common])
        p.add_argument('--which', type=int, choices=[2, 3, 4], required=True)
        p.add_argument('--steps', type=int, default=50, help='p grid size for examples 3 and 4')
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # --help
            return int(e.code or 0)
        except QInfoError as e:
            logger.error("%s", e)
            return EXIT_INVALID

        self.threads = args.threads if args.threads is not None else self.config.threads
        if self.threads < 1:
            logger.error("--threads must be >= 1")
            return EXIT_INVALID

        handler = self.command_handlers[(args.command, args.subcommand)]
        try:
            with open_output(args.out) as out:
                self.out = out
                handler(args)
        except ConvergenceError as e:
            logger.error("%s", e)
            return EXIT_NOT_CONVERGED
        except (QInfoError, ValueError, OSError) as e:
            logger.error("%s", e)
            return EXIT_INVALID
        except Exception as e:
            logger.exception("Unexpected error in %s %s: %s", args.command, args.subcommand, e)
            raise
        return EXIT_OK

    def _restarts(self, args, kind: str) -> int:
        restarts = args.restarts if args.restarts is not None else self.config.optimizer.restarts_for(kind)
        if restarts < 1:
            raise ParameterRangeError("--restarts must be >= 1")
        return restarts

    def _seed(self, args) -> int:
        return args.seed if args.seed is not None else self.config.optimizer.seed

    def _write_search(self, report: OptimizationReport, summary: dict, flag_negative: bool = False):
        columns = ['restart', 'value', 'iterations']
        rows = [
            {'restart': i, 'value': v, 'iterations': n, 'negative': v < -NEGATIVE_TOL}
            for i, (v, n) in enumerate(zip(report.values, report.iterations))
        ]
        if flag_negative:
            columns.append('negative')
            summary = {**summary, 'negative': report.best_value < -NEGATIVE_TOL}
        summary = {
            **summary,
            'restarts': report.restarts,
            'seed': report.seed,
            'converged': report.converged,
            'best_value': report.best_value,
            **report.extras,
            'best_state': report.best_state.amplitudes,
        }
        write_csv(self.out, columns, rows, summary)
        if not report.converged:
            raise ConvergenceError(f"none of {report.restarts} restarts converged")

    # capacity

    def _handle_capacity_two_qubit(self, args):
        coupling = CouplingSpec.two_qubit(args.mu1, args.mu2, args.mu3)
        if args.sweep_p < 2:
            raise ParameterRangeError("--sweep-p must be >= 2")
        rows = []
        for p in np.linspace(0.0, 0.5, args.sweep_p):
            bd = bloch_decompose(from_pure(psi_E(p)), TWO_QUBITS)
            rows.append({'p': p, 'f_p': f_geometric(p), 'gamma_E': rate_two_qubit(bd, coupling.mu)})
        p0, per_unit = find_p0()
        summary = {
            'p0': p0,
            'gamma_max': per_unit * (args.mu1 + args.mu2),
            'f_vn_p0': f_entropy(p0),
        }
        write_csv(self.out, ['p', 'f_p', 'gamma_E'], rows, summary)

        if args.maximize:
            report = maximize_rate(SystemKind.TWO_QUBIT, coupling,
                                   restarts=self._restarts(args, 'two_qubit'), seed=self._seed(args),
                                   measure=args.measure, workers=self.threads)
            write_summary(self.out, {
                'measure': args.measure,
                'restarts': report.restarts,
                'seed': report.seed,
                'converged': report.converged,
                'best_value': report.best_value,
            })
            if not report.converged:
                raise ConvergenceError(f"none of {report.restarts} restarts converged")

    def _handle_capacity_search(self, args, kind: SystemKind):
        if args.mu_values:
            try:
                values = [float(v) for v in args.mu_values.split(',')]
            except ValueError:
                raise ParameterRangeError(f"cannot parse --mu-values '{args.mu_values}'")
            if kind is SystemKind.THREE_QUBIT:
                if len(values) != 9:
                    raise ParameterRangeError("three-qubit coupling needs 9 strengths")
                coupling = CouplingSpec.three_qubit(values[0:3], values[3:6], values[6:9])
            else:
                coupling = CouplingSpec.two_qutrit(values)
        elif args.isotropic:
            coupling = CouplingSpec.isotropic(kind, args.mu)
        else:
            raise ParameterRangeError("pass --isotropic or --mu-values")

        report = maximize_rate(kind, coupling, restarts=self._restarts(args, kind.value),
                               seed=self._seed(args), workers=self.threads)
        summary = {'kind': kind.value, 'mu': coupling.mu}
        if coupling.is_isotropic and coupling.mu.flat[0] != 0:
            summary['best_value_per_mu'] = report.best_value / coupling.mu.flat[0]
        self._write_search(report, summary)

    # hubbard

    def _handle_hubbard_dimer(self, args):
        grid = _grid(args.alpha_min, args.alpha_max, args.steps)
        columns = ['alpha', 'E_g', 'E_s', 'E_vn', 'E_unequal']
        rows = []
        for x in grid:
            alpha = alpha_from_interaction(x) if args.u_over_t else x
            e = dimer_entanglements(alpha)
            row = {'alpha': alpha, 'E_g': e.E_g, 'E_s': e.E_s, 'E_vn': e.E_vn, 'E_unequal': e.E_unequal}
            if args.u_over_t:
                row['U_over_t'] = x
            rows.append(row)
        if args.u_over_t:
            columns = ['U_over_t'] + columns
        write_csv(self.out, columns, rows)

    def _handle_hubbard_trimer(self, args):
        if args.beta_min < 0:
            raise ParameterRangeError("--beta-min must be >= 0")
        rows = []
        for beta in _grid(args.beta_min, args.beta_max, args.steps):
            e = trimer_entanglements(beta, degeneracy_tol=self.config.tolerances.degeneracy)
            geometric = (e.E_six, e.E_site3, e.E_bi_A_BC)
            rows.append({'beta': beta, 'E_six': e.E_six, 'E_site3': e.E_site3,
                         'E_bi': e.E_bi_A_BC, 'E_vn': e.E_vn_A_BC,
                         'negative': min(geometric) < -NEGATIVE_TOL})
        write_csv(self.out, ['beta', 'E_six', 'E_site3', 'E_bi', 'E_vn', 'negative'], rows)

    def _handle_hubbard_maximize(self, args):
        sector = number_sector(args.modes, args.particles)
        partition = PartitionSpec.parse(args.partition, (2,) * args.modes)
        report = maximize_partition_entanglement(sector, partition,
                                                 restarts=self._restarts(args, 'fermion'),
                                                 seed=self._seed(args), workers=self.threads)
        self._write_search(report, {
            'modes': args.modes,
            'particles': args.particles,
            'partition': args.partition,
            'E_max': report.best_value,
        }, flag_negative=True)

    # xx chain

    def _handle_xx_sweep_field(self, args):
        ratio = -1.0 if args.uniform else args.ratio
        rows = sweep_field(args.temp, ratio, _grid(args.b1_min, args.b1_max, args.steps),
                           J=args.j, workers=self.threads, grid_step=self.config.optimizer.grid_step)
        write_csv(self.out, ['B1', 'QD', 'CC', 'EN'], rows, {'T': args.temp, 'B2_over_B1': -ratio, 'J': args.j})

    def _handle_xx_sweep_temp(self, args):
        if args.t_min <= 0:
            raise ParameterRangeError("--t-min must be positive")
        rows = sweep_temperature(args.b1, args.b2, _grid(args.t_min, args.t_max, args.steps),
                                 J=args.j, workers=self.threads, grid_step=self.config.optimizer.grid_step)
        write_csv(self.out, ['T', 'QD', 'CC', 'EN'], rows, {'B1': args.b1, 'B2': args.b2, 'J': args.j})

    def _handle_xx_monogamy(self, args):
        if args.temp is not None:
            params = [XXParams(J=args.j, B1=float(b), B2=-args.ratio * float(b), T=args.temp)
                      for b in _grid(args.b1_min, args.b1_max, args.steps)]
        else:
            if args.t_min <= 0:
                raise ParameterRangeError("--t-min must be positive")
            params = [XXParams(J=args.j, B1=args.b1, B2=-args.ratio * args.b1, T=float(t))
                      for t in _grid(args.t_min, args.t_max, args.steps)]
        rows = sweep_monogamy(params, workers=self.threads, grid_step=self.config.optimizer.grid_step)
        residual = max(r['identity_residual'] for r in rows)
        write_csv(self.out, MONOGAMY_COLUMNS, rows, {'max_identity_residual': residual})

    # discord

    def _handle_discord_geometric(self, args):
        try:
            with open(args.state_file, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise StateFormatError(f"cannot read state file {args.state_file}: {e}")
        rho = parse_density_matrix(text)
        if len(rho.dims) != 2:
            raise StateFormatError(f"geometric discord needs a bipartite state, got dims {rho.dims}")
        report = discord_report(rho, bruteforce=args.bruteforce,
                                restarts=self._restarts(args, 'bruteforce'), seed=self._seed(args),
                                workers=self.threads)
        witness = zero_discord_witness(rho, self.config.tolerances.rank, self.config.tolerances.commutator)
        row = {
            'D_formula': report.D_formula,
            'D_lower_bound': report.D_lower_bound,
            'D_bruteforce': '' if report.D_bruteforce is None else report.D_bruteforce,
        }
        write_csv(self.out, list(row), [row], {
            'dims': 'x'.join(str(d) for d in rho.dims),
            'G_eigenvalues': report.G_eigenvalues,
            'chosen_eigen_indices': report.chosen_eigen_indices,
            'rank_L': witness.rank_L,
            'zero_discord': witness.is_zero_discord,
        })

    def _handle_discord_werner(self, args):
        rows = []
        for z in _grid(args.z_min, args.z_max, args.steps):
            rows.append({
                'z': z,
                'D_closed': werner_discord(args.m, z),
                'D_formula': geometric_discord_mn(werner_state(args.m, z)).D_formula,
            })
        write_csv(self.out, ['z', 'D_closed', 'D_formula'], rows, {'m': args.m})

    def _handle_discord_examples(self, args):
        columns = ['p', 'D_formula', 'D_lower_bound']
        if args.which == 2:
            report = geometric_discord_mn(example_state(2))
            row = {'p': 1.0, 'D_formula': report.D_formula, 'D_lower_bound': report.D_lower_bound}
            write_csv(self.out, columns, [row], {'G_eigenvalues': report.G_eigenvalues})
            return
        rows = []
        for p in _grid(0.0, 1.0, args.steps):
            report = geometric_discord_mn(example_state(args.which, p))
            rows.append({'p': p, 'D_formula': report.D_formula, 'D_lower_bound': report.D_lower_bound})
        write_csv(self.out, columns, rows, {'example': args.which})
