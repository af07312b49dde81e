"""Command-line front end: `python -m whitefact.cli <command> ...`."""
import json
import logging
import os
import sys

import click

from engine_config.config import (
    DEFAULT_SEED,
    InvalidFormatException,
    InvalidSystemException,
    InvalidThreadCountException,
    RunConfig,
    formats,
    load_system,
    thread_count,
)
from whitefact.autos import factorize, verify_factorization
from whitefact.bass_serre_tree import distance, geodesic
from whitefact.exceptions import ParseException, WhitefactException
from whitefact.explorer import check_ball, enumerate_ball
from whitefact.labellings import volume
from whitefact.reduction import reduce_to_base
from whitefact.selftest import run_selftest
from whitefact.serialization import (
    alpha_from_json,
    alpha_to_json,
    auto_from_json,
    compact,
    factorization_from_json,
    factorization_to_json,
    moves_to_json,
    sn_ball_to_dot,
    sn_ball_to_json,
    vertex_from_name,
    word_from_json,
)

PARSE_ERROR = 2
DOMAIN_ERROR = 1


def load_argument(argument: str):
    """
    Read a JSON argument given inline or as a file path

    :param argument: JSON text or path to a JSON file
    :raises ParseException: if the argument is not valid JSON
    :return: decoded JSON value
    """
    text = argument
    if os.path.isfile(argument):
        with open(argument) as file:
            text = file.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseException(f'{argument!r} is neither a JSON file nor JSON text ({e.msg})')


class Context:
    def __init__(self, config: RunConfig):
        self.config = config
        self._system = None

    @property
    def system(self):
        if self._system is None:
            if self.config.system_path is None:
                raise InvalidSystemException('--system is required for this command')
            self.config.validate()
            self._system = load_system(self.config.system_path)
        return self._system


def system_option(command):
    """
    Accept --system after the subcommand as well
    """
    def remember(click_ctx, param, value):
        if value is not None:
            click_ctx.find_object(Context).config.system_path = value
        return value
    return click.option('--system', 'system_override', type=click.Path(), default=None, expose_value=False,
                        callback=remember, help='FactorSystem JSON file')(command)


def emit(ctx: Context, data, text: str | None = None):
    if ctx.config.output_format == 'text' and text is not None:
        click.echo(text)
    else:
        click.echo(compact(data))


class RecordingGroup(click.Group):
    """
    Group that remembers the raw arguments of the invoked subcommand
    """
    def resolve_command(self, ctx, args):
        name, command, rest = super().resolve_command(ctx, args)
        ctx.meta['whitefact.arguments'] = list(rest)
        return name, command, rest


@click.group(cls=RecordingGroup)
@click.option('--system', 'system_path', type=click.Path(), default=None, help='FactorSystem JSON file')
@click.option('--format', 'output_format', type=click.Choice(formats), default='json')
@click.option('--seed', type=int, default=DEFAULT_SEED, help='seed of the randomized suites')
@click.option('--log-level', default='WARNING', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']))
@click.pass_context
def cli(ctx, system_path, output_format, seed, log_level):
    logging.basicConfig(level=log_level)
    config = RunConfig(system_path, ctx.invoked_subcommand or '', ctx.meta.get('whitefact.arguments', []),
                       output_format, seed)
    config.validate()
    ctx.obj = Context(config)


@cli.command()
@click.argument('word')
@system_option
@click.pass_obj
def normalize(ctx: Context, word):
    w = word_from_json(ctx.system, load_argument(word))
    emit(ctx, w.to_json(), str(w))


@cli.command('distance')
@click.argument('p')
@click.argument('q')
@system_option
@click.pass_obj
def distance_command(ctx: Context, p, q):
    d = distance(vertex_from_name(ctx.system, p), vertex_from_name(ctx.system, q))
    emit(ctx, d, str(d))


@cli.command('geodesic')
@click.argument('p')
@click.argument('q')
@system_option
@click.pass_obj
def geodesic_command(ctx: Context, p, q):
    path = geodesic(vertex_from_name(ctx.system, p), vertex_from_name(ctx.system, q))
    emit(ctx, [v.name for v in path], '\n'.join(v.name for v in path))


@cli.command('volume')
@click.argument('alpha')
@system_option
@click.pass_obj
def volume_command(ctx: Context, alpha):
    v = volume(alpha_from_json(ctx.system, load_argument(alpha)))
    emit(ctx, v, str(v))


@cli.command()
@click.argument('alpha')
@system_option
@click.pass_obj
def reduce(ctx: Context, alpha):
    final, moves = reduce_to_base(alpha_from_json(ctx.system, load_argument(alpha)))
    emit(ctx, {'final': alpha_to_json(final), 'moves': moves_to_json(moves)},
         '\n'.join(f'({m.i}, {m.j}) a={m.a.payload} volume {m.vol_before} -> {m.vol_after}' for m in moves))


@cli.command('factorize')
@click.argument('auto')
@system_option
@click.pass_obj
def factorize_command(ctx: Context, auto):
    psi = auto_from_json(ctx.system, load_argument(auto))
    emit(ctx, factorization_to_json(factorize(psi)))


@cli.command()
@click.argument('auto')
@click.argument('factorization')
@system_option
@click.pass_obj
def verify(ctx: Context, auto, factorization):
    psi = auto_from_json(ctx.system, load_argument(auto))
    f = factorization_from_json(ctx.system, load_argument(factorization))
    if not verify_factorization(psi, f):
        raise WhitefactException('factorization does not agree with the automorphism')
    click.echo('OK')


@cli.command()
@click.option('--max-volume', type=int, required=True)
@system_option
@click.pass_obj
def explore(ctx: Context, max_volume):
    ball = enumerate_ball(ctx.system, max_volume, thread_count())
    report = check_ball(ball)
    for failure in report.failures:
        logging.error(failure)
    if ctx.config.output_format == 'dot':
        click.echo(sn_ball_to_dot(ball))
    else:
        emit(ctx, {'ball': sn_ball_to_json(ball), 'ok': report.ok, 'failures': report.failures},
             f'{report.alpha_count} alpha-classes, {report.a_count} A-classes, {report.edge_count} edges, '
             f'{report.reached_base} reach the base, checks {"passed" if report.ok else "failed"}')
    if not report.ok:
        raise WhitefactException(f'{len(report.failures)} ball checks failed')


@cli.command()
@click.pass_obj
def selftest(ctx: Context):
    results = run_selftest(ctx.config.seed)
    for result in results:
        click.echo(str(result))
    if not all(result.passed for result in results):
        raise WhitefactException('selftest failed')


def cli_main(argv=None) -> int:
    """
    Run the command line and map errors to exit codes

    :param argv: arguments without the program name
    :return: 0 on success, 1 on domain errors, 2 on parse errors
    """
    try:
        cli.main(args=argv, prog_name='whitefact', standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return PARSE_ERROR
    except (ParseException, InvalidSystemException, InvalidFormatException) as e:
        click.echo(e.message, err=True)
        return PARSE_ERROR
    except (WhitefactException, InvalidThreadCountException) as e:
        click.echo(e.message, err=True)
        return DOMAIN_ERROR
    return 0


if __name__ == '__main__':
    sys.exit(cli_main())
