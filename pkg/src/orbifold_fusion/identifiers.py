"""Text identifiers for module labels.

``type1:<λ>/<μ>``, ``type2:<λ>/<μ>:<±>`` and ``twisted:<k>:<χ>:<±>``.  λ and μ
are written as exponents over the invariant-factor generators of ``L₊*/L₊``
and ``L₋*/L₋`` (``0`` for a trivial group); ``k`` indexes the twisted λ list
of the chosen mode and χ is a character index or name.
"""

from __future__ import annotations

from .characters import character_from_name
from .lattice import CosetVector, QuotientGroup
from .modules import ModuleLabel, Orbifold, Twisted, Type1, Type2, fold, label_key


class BadIdentifier(ValueError):
    pass


def _fmt(group: QuotientGroup, x: CosetVector) -> str:
    ks = group.coords(x)
    return ",".join(map(str, ks)) if ks else "0"


def _parse(group: QuotientGroup, text: str) -> CosetVector:
    text = text.strip()
    if not group.generators:
        if text not in ("", "0"):
            raise BadIdentifier(f"coordinates {text!r} given for a trivial group")
        return group.from_coords(())
    try:
        ks = [int(t) for t in text.split(",")]
    except ValueError:
        raise BadIdentifier(f"bad coordinates {text!r}") from None
    if len(ks) != len(group.generators):
        raise BadIdentifier(f"expected {len(group.generators)} coordinates in {text!r}")
    return group.from_coords(ks)


def _sign(text: str) -> int:
    if text not in ("+", "-"):
        raise BadIdentifier(f"sign must be + or -, got {text!r}")
    return 1 if text == "+" else -1


def twisted_lambdas(orb: Orbifold, mode: str) -> list[CosetVector]:
    if mode == "paper":
        return list(orb.twisted_lambdas_paper)
    return sorted({lam for lam, _ in orb.twisted_pairs}, key=CosetVector.sort_key)


def _lambda_index(orb: Orbifold, mode: str) -> dict[CosetVector, int]:
    cache = orb.__dict__.setdefault("_lambda_index", {})
    if mode not in cache:
        cache[mode] = {lam: i for i, lam in enumerate(twisted_lambdas(orb, mode))}
    return cache[mode]


def format_label(orb: Orbifold, x: ModuleLabel, mode: str = "paper") -> str:
    if isinstance(x, Type1):
        return f"type1:{_fmt(orb.D_plus, x.lam)}/{_fmt(orb.D_minus, x.mu)}"
    if isinstance(x, Type2):
        return f"type2:{_fmt(orb.D_plus, x.lam)}/{_fmt(orb.D_minus, x.mu)}:{'+' if x.sign > 0 else '-'}"
    idx = _lambda_index(orb, mode).get(x.lam)
    lam = str(idx) if idx is not None else "[" + _fmt(orb.D_plus, x.lam) + "]"
    return f"twisted:{lam}:{x.chi.name}:{'+' if x.sign > 0 else '-'}"


def parse_label(orb: Orbifold, text: str, mode: str = "paper") -> ModuleLabel:
    """Inverse of :func:`format_label`; raises :class:`BadIdentifier`."""
    kind, _, rest = text.strip().partition(":")
    if kind == "type1":
        lam, slash, mu = rest.partition("/")
        if not slash:
            raise BadIdentifier(f"missing '/' in {text!r}")
        m = _parse(orb.D_minus, mu)
        if m.twice_in_modulus():
            raise BadIdentifier(f"{text!r}: 2μ lies in L- (use type2)")
        return Type1(_parse(orb.D_plus, lam), fold(m))
    if kind == "type2":
        body, _, sign = rest.rpartition(":")
        lam, slash, mu = body.partition("/")
        if not slash:
            raise BadIdentifier(f"missing '/' in {text!r}")
        m = _parse(orb.D_minus, mu)
        if not m.twice_in_modulus():
            raise BadIdentifier(f"{text!r}: 2μ does not lie in L- (use type1)")
        return Type2(_parse(orb.D_plus, lam), m, _sign(sign))
    if kind == "twisted":
        parts = rest.split(":")
        if len(parts) != 3:
            raise BadIdentifier(f"expected twisted:<k>:<chi>:<sign>, got {text!r}")
        k, chi, sign = parts
        if k.startswith("["):
            lam = _parse(orb.D_plus, k.strip("[]"))
        else:
            lams = twisted_lambdas(orb, mode)
            try:
                lam = lams[int(k)]
            except (ValueError, IndexError):
                raise BadIdentifier(f"twisted index {k!r} out of range 0..{len(lams) - 1}") from None
        if chi.isdigit():
            try:
                c = orb.characters[int(chi)]
            except IndexError:
                raise BadIdentifier(f"character index {chi} out of range") from None
        else:
            try:
                c = character_from_name(orb.central, chi)
            except ValueError as exc:
                raise BadIdentifier(str(exc)) from None
        return Twisted(lam, c, _sign(sign))
    raise BadIdentifier(f"unknown module kind {kind!r}")


def sorted_labels(labels) -> list[ModuleLabel]:
    return sorted(labels, key=label_key)
