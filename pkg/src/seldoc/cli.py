"""Command-line surface.

Exit codes: 0 success, 1 verification rejected, 2 usage or parse errors.
Every subcommand is a thin shell over the library modules.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import bench as bench_mod
from .anchor import open_anchor
from .errors import SeldocError
from .jsoncodec import json_to_tree, plain_json_to_tree, redact as redact_op, tree_to_json
from .registrar import register_batch, verify_document
from .signing import keygen as keygen_op, load_keypair, save_keypair, sign_container


class _Group(click.Group):
    def main(self, *args, **kwargs):
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(2)
        except click.ClickException as exc:
            exc.show()
            sys.exit(2)
        except click.exceptions.Abort:
            sys.exit(2)
        except SeldocError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)


@click.group(cls=_Group)
def main():
    """Selective disclosure toolkit for signed structured documents."""


@main.command()
@click.option("--out", "out", required=True, type=click.Path(), help="private key file; pubkey goes to OUT.pub")
def keygen(out):
    """Generate an ECDSA P-256 keypair."""
    pair = keygen_op()
    save_keypair(pair, out)
    click.echo(f"wrote {out} and {out}.pub")


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--key", "key_file", required=True, type=click.Path(exists=True))
@click.option("--out", "out", type=click.Path(), help="default: INPUT with .sdj suffix")
def issue(input_file, key_file, out):
    """Salt, sign, and emit a document from plain JSON."""
    tree = plain_json_to_tree(Path(input_file).read_text())
    signed = sign_container(tree, load_keypair(key_file))
    text = tree_to_json(signed)
    out = out or str(Path(input_file).with_suffix(".sdj"))
    Path(out).write_text(text)
    click.echo(f"wrote {out}")


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--hide", "paths", multiple=True, required=True, help="dotted member path to hide (repeatable)")
@click.option("--out", "out", type=click.Path(), help="default: stdout")
def redact(input_file, paths, out):
    """Replace members by their digests; document digest is unchanged."""
    text = redact_op(Path(input_file).read_text(), list(paths))
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--anchor", "anchor", required=True, help="journal path or JSON-RPC URL")
def register(files, anchor):
    """Anchor a batch of signed documents and embed existence proofs."""
    backend = open_anchor(anchor)
    docs = [Path(f).read_text() for f in files]
    out = register_batch(docs, backend)
    for path, text in zip(files, out):
        Path(path).write_text(text)
    click.echo(f"registered {len(files)} document(s)")


@main.command()
@click.argument("input_file", type=click.Path(exists=True))
@click.option("--anchor", "anchor", required=True, help="journal path or JSON-RPC URL")
@click.option("--json", "as_json", is_flag=True, help="print only the JSON report")
def verify(input_file, anchor, as_json):
    """Verify signatures and the existence proof of a document."""
    backend = open_anchor(anchor)
    report = verify_document(Path(input_file).read_text(), backend)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(report.human_text())
        click.echo(json.dumps(report.to_dict(), indent=2))
    sys.exit(0 if report.accepted else 1)


@main.command()
@click.option("--n", "ns", multiple=True, type=int, default=(1, 2, 4, 8, 16, 32, 64))
@click.option("--d", "ds", multiple=True, type=int, default=(1,))
@click.option("--csv", "as_csv", is_flag=True)
def bench(ns, ds, as_csv):
    """Digest-operation counts for both schemes over a grid of n, d."""
    reports = bench_mod.cost_table(list(ns), list(ds))
    if as_csv:
        click.echo(bench_mod.format_csv(reports), nl=False)
    else:
        click.echo(bench_mod.format_table(reports))


if __name__ == "__main__":
    main()
