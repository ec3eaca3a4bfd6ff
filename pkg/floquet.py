#!/usr/bin/env python
# -*- coding: utf-8 -*-

__licence__ = "WTFPL Licence 2.0"


import argparse
import importlib
import json
import logging
import os
import sys
import traceback

import commands.utils.cli_colors as colors
from commands.utils import checks
from commands.utils.logs import setup_logging
from quartic.errors import FloquetError

if sys.version_info[1] < 7 or sys.version_info[0] < 3:
    print(f"{colors.text_colors.RED}[ERROR] Python 3.7 or + is required.{colors.ENDC}")
    exit()

log = logging.getLogger('floquet')
HERE = os.path.dirname(os.path.abspath(__file__))

l_commands = (
    'commands.trace',
    'commands.spectrum',
    'commands.asymptotics',
    'commands.small_gamma',
    'commands.delta_comb',
)


class FloquetCLI:
    def __init__(self, announce=False):
        self.config = None
        self.handlers = {}
        self.parser = argparse.ArgumentParser(
            prog='floquet',
            description="Floquet spectra of y'''' + V y = lam y with 1-periodic V.")
        self.parser.add_argument('--config', help="JSON run configuration")
        self.parser.add_argument('--out', help="output directory")
        self.parser.add_argument('--threads', type=int, help="worker threads")
        self.parser.add_argument('--tol', type=float, help="root tolerance")
        noise = self.parser.add_mutually_exclusive_group()
        noise.add_argument('-v', '--verbose', action='store_true')
        noise.add_argument('-q', '--quiet', action='store_true')
        self.subparsers = self.parser.add_subparsers(dest='command', required=True)
        self.subparsers.add_parser('help', help="show a page of the command list").add_argument(
            'page', type=int, nargs='?', default=1)

        for extension in l_commands:
            try:
                importlib.import_module(extension).setup(self)
                if announce:
                    print(f"{colors.text_colors.GREEN}\"{extension}\""
                          f" loaded{colors.ENDC}")
            except Exception as e:
                print(f"{colors.text_colors.RED}"
                      f"Cannot load command module {extension}\n"
                      f"{type(e).__name__}: {e}{colors.ENDC}", file=sys.stderr)

    def help(self, page=1):
        """Print one page of texts/help.md."""
        text = open(os.path.join(HERE, 'texts', 'help.md')).read().split("[split]")
        page = int(page) if 0 < int(page) <= len(text) else 1
        print(f"page {page}/{len(text)}")
        print(text[page - 1].strip())
        return 0

    def add_command(self, name, handler, help_text):
        self.subparsers.add_parser(name, help=help_text)
        self.handlers[name] = handler

    def on_command_error(self, error):
        """Exit status and JSON diagnostic for a failed command."""
        log.debug("".join(traceback.format_exception(type(error), error, error.__traceback__)))
        if isinstance(error, FloquetError):
            status, details = error.exit_code, error.details
        elif isinstance(error, (ValueError, TypeError)):
            status, details = 2, {}
        elif isinstance(error, (ArithmeticError, RuntimeError)):
            status, details = 3, {}
        else:
            raise error
        payload = {'error': type(error).__name__, 'message': str(error), 'details': details}
        print(json.dumps(payload, default=str), file=sys.stderr)
        return status

    def run(self, argv=None):
        args = self.parser.parse_args(argv)
        if args.command == 'help':
            return self.help(args.page)
        level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
        setup_logging(level)
        try:
            self.config = checks.load_config(args.config).with_overrides(
                out=args.out, threads=args.threads, tol=args.tol)
            if self.config.command not in (None, args.command):
                log.warning("config was written for %r, running %r", self.config.command, args.command)
            self.handlers[args.command](self.config)
        except Exception as e:
            return self.on_command_error(e)
        return 0


def main(argv=None):
    return FloquetCLI().run(argv)


if __name__ == '__main__':
    sys.exit(main())
