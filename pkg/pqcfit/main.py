import argparse
import logging
import os
import sys

from .config import EXPERIMENT_KINDS, load_config, parse_config
from .const import ConfigError, EXIT_CONFIG_ERROR, EXIT_RUNTIME_ERROR
from .runner import Runner

logger = logging.getLogger('pqcfit')

LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s: %(message)s'


def setup_logging():
    level_name = os.environ.get('PQCFIT_LOG_LEVEL', 'INFO').upper()
    level = logging.getLevelName(level_name)
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT,
                        level=level if isinstance(level, int) else logging.INFO)
    if not isinstance(level, int):
        logger.warning("Malformed value for PQCFIT_LOG_LEVEL, using INFO.")


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog='pqcfit', description="Learning capability experiments for parametrized quantum circuits.")
    subparsers = parser.add_subparsers(dest='kind', metavar='experiment')
    subparsers.required = True
    for kind in EXPERIMENT_KINDS:
        subparser = subparsers.add_parser(kind, help="Run a '{}' experiment.".format(kind))
        subparser.add_argument('--config', help="YAML experiment configuration")
        subparser.add_argument('--seed', type=int, help="base seed")
        subparser.add_argument('--workers', type=int, help="number of worker processes")
        subparser.add_argument('--out', help="output directory")

    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    setup_logging()

    overrides = {'kind': args.kind, 'seed': args.seed, 'workers': args.workers, 'output': args.out}
    try:
        if args.config:
            config = load_config(args.config, overrides)
        else:
            config = parse_config('', overrides)
    except ConfigError as error:
        logger.error("%s", error)
        return EXIT_CONFIG_ERROR

    try:
        return Runner(config).run()
    except Exception:
        logger.exception("Experiment failed.")
        return EXIT_RUNTIME_ERROR


if __name__ == '__main__':
    sys.exit(main())
