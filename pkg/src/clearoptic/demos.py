"""Worked sessions: a postal address, a mailing list and the iris case study.

Each demo returns its full text so the CLI can print it and the tests can
compare it byte for byte against the committed golden files.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from typing import Optional

from . import iris as ir
from .core import Left, Lens, Prism, Right
from .lattice import DynOptic, OpticKind, compose, over, preview, to_list
from .path import compile_text

# ---------------------------------------------------------------------------
# Address


@dataclass(frozen=True)
class PostalAddress:
    street: str
    code: str
    city: str


_ADDRESS_RE = re.compile(r"^\s*([^,]+?)\s*,\s*([^,]+?)\s*,\s*([^,]+?)\s*$")


def _match_postal(text: str):
    m = _ADDRESS_RE.match(text)
    if m is None:
        return Left(text)
    return Right(PostalAddress(*m.groups()))


def _build_postal(p: PostalAddress) -> str:
    return f"{p.street}, {p.code}, {p.city}"


postal = DynOptic(OpticKind.PRISM, Prism(_match_postal, _build_postal))
street = DynOptic(OpticKind.LENS, Lens(lambda p: p.street, lambda p, v: replace(p, street=v)))
city = DynOptic(OpticKind.LENS, Lens(lambda p: p.city, lambda p, v: replace(p, city=v)))

ADDRESS = "45 Banbury Rd, OX1 3QD, Oxford"
MALFORMED_ADDRESS = "Banbury Road, Oxford"


def _show_postal(p: PostalAddress) -> list[str]:
    return [f"    Street:  {p.street}", f"    Code:    {p.code}", f"    City:    {p.city}"]


def _show_preview(o: DynOptic, s) -> list[str]:
    r = preview(o, s)
    if r is None:
        return ["    no match"]
    if isinstance(r.value, PostalAddress):
        return _show_postal(r.value)
    return ["    " + json.dumps(r.value)]


def demo_address() -> str:
    postal_street = compose(postal, street)
    postal_city = compose(postal, city)
    lines = [f"address = {json.dumps(ADDRESS)}", "", "preview postal"]
    lines += _show_preview(postal, ADDRESS)
    lines += ["", f"preview postal.street  ({postal_street.kind})"]
    lines += _show_preview(postal_street, ADDRESS)
    lines += ["", 'set postal.street "7 Banbury Rd"']
    lines.append("    " + json.dumps(over(postal_street, lambda _: "7 Banbury Rd", ADDRESS)))
    lines += ["", f'append " (UK)" to postal.city  ({postal_city.kind})']
    lines.append("    " + json.dumps(over(postal_city, lambda c: c + " (UK)", ADDRESS)))
    lines += ["", f"malformed = {json.dumps(MALFORMED_ADDRESS)}", "", "preview postal"]
    lines += _show_preview(postal, MALFORMED_ADDRESS)
    lines += ["", 'append " (UK)" to postal.city']
    lines.append("    " + json.dumps(over(postal_city, lambda c: c + " (UK)", MALFORMED_ADDRESS)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Mailing list

MAILING_LIST = [
    {"name": "Turing, Alan", "email": "turing@manchester.ac.uk", "frequency": "Daily"},
    {"name": "Noether, Emily", "email": "emmynoether@fau.eu", "frequency": "Monthly"},
    {"name": "Gauss, Carl F.", "email": "gauss@goettingen.de", "frequency": "Weekly"},
]


def _domain_update(address: str, new: str) -> str:
    user, _, _ = address.partition("@")
    return f"{user}@{new}"


domain = DynOptic(OpticKind.LENS, Lens(lambda e: e.partition("@")[2], _domain_update))


def mail_table(rows: list) -> str:
    cols = (("Name", "name"), ("Email", "email"), ("Frequency", "frequency"))
    widths = [max(len(title), *(len(r[key]) for r in rows)) for title, key in cols]

    def row(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    rule = "|" + "+".join("-" * (w + 2) for w in widths) + "|"
    lines = [row([title for title, _ in cols]), rule]
    lines += [row([r[key] for _, key in cols]) for r in rows]
    return "\n".join(lines)


def demo_mail() -> str:
    mails = compile_text("each .email")
    mail_domains = compose(mails, domain)
    lines = ["mailing list", mail_table(MAILING_LIST), ""]
    lines += [f"list mails  ({mails.kind})", json.dumps(to_list(mails, MAILING_LIST)), ""]
    lines += [f"list mails.domain  ({mail_domains.kind})", json.dumps(to_list(mail_domains, MAILING_LIST)), ""]
    lines.append("uppercase mails.domain")
    lines.append(mail_table(over(mail_domains, str.upper, MAILING_LIST)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Iris


def nearest_aggregate() -> DynOptic:
    return compose(
        DynOptic(OpticKind.LISTLENS, ir.measure_nearest),
        DynOptic(OpticKind.KALEIDOSCOPE, ir.aggregate),
    )


def demo_iris(aggfn: str = "mean", flowers: Optional[list] = None) -> str:
    flowers = ir.load_iris() if flowers is None else flowers
    optic = nearest_aggregate()
    flower = optic.payload.agg(ir.FOLDS[aggfn])(flowers)
    lines = [f"measureNearest.aggregate  ({optic.kind}), fold: {aggfn}, {len(flowers)} flowers"]
    lines.append(ir.format_flower(flower))
    return "\n".join(lines) + "\n"


def demo_classify(query: ir.Measurements, flowers: Optional[list] = None) -> str:
    flowers = ir.load_iris() if flowers is None else flowers
    flower = ir.measure_nearest.classify(flowers, query)
    return ir.format_flower(flower) + "\n"
