"""Command-line front end.

Subcommands: ``relations``, ``regconst``, ``stheta``, ``splitting``,
``parity``.  Jobs come either from inline flags (``--group dihedral:6 --p 3``)
or from a line-oriented config file with sections::

    [group]
    family = gl2          # cyclic | dihedral | gl2 | borel_quotient
    param = 3             # or: degree = 3 / generators = (0 1), (0 1 2)

    [params]
    p = 3                 # prime for valuations (flag --p overrides)
    factor_bound = 1000000

    [subgroup "X"]        # optional extra subgroups
    members = 0, 3        # element indices, or: generators = (0 1)(2 5), ...

    [relation]
    terms = U1:1, U2:-1   # explicit; or: subgroups = 1, C2, Cn, G  (search)

    [rep "sigma"]
    base = perm:B         # split the listed summands off Q[G/B]
    minus = 1             # or just: perm = G

    [prime "l=11"]
    D = D
    I = I
    model = split_mult:1  # good | split_mult:<c> | custom:<e>,<f>=<c>;...

Exit codes: 0 ok, 2 config error, 3 cap exceeded, 4 math precondition
violated, 5 reduction-model table gap.
"""

from __future__ import annotations

import argparse
import configparser
import re
import sys
from dataclasses import dataclass, field

from regparity.exact_linalg import (
    DEFAULT_FACTOR_BOUND,
    FactorBoundExceeded,
    ord_p,
)
from regparity.perm_groups import (
    CapExceeded,
    Group,
    NamedGroup,
    Subgroup,
    format_cycles,
    generate,
    named_group,
    parse_cycles,
)
from regparity.representations import (
    DegeneratePairingError,
    Representation,
    direct_sum,
    perm_rep,
    split_off,
)
from regparity.brauer_relations import BrauerRelation, find_relations, verify_relation
from regparity.regconst import (
    NotSelfDualError,
    RegulatorConstant,
    regulator_constant,
    s_theta,
)
from regparity.local_arith import (
    CustomTable,
    Good,
    LocalDataError,
    LocalPrimeData,
    ModelTableGap,
    SplitMultiplicative,
    predict_parity,
    splitting,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAP = 3
EXIT_MATH = 4
EXIT_MODEL_GAP = 5


class ConfigError(ValueError):
    """Malformed or inconsistent job configuration."""


def _machine_key(label: str) -> str:
    """Machine-block keys must not contain '='; prime labels like "l=11" are
    written with ':' instead."""
    return label.replace("=", ":")


class InvalidRelationError(ValueError):
    """An explicitly supplied relation fails verification."""


# -- job description ----------------------------------------------------------

@dataclass(frozen=True)
class JobConfig:
    """Parsed, validated and canonicalised description of one job."""

    group: tuple  # ("family", name, param) | ("explicit", degree, gens)
    p: int | None = None
    factor_bound: int = DEFAULT_FACTOR_BOUND
    subgroup_defs: tuple = ()  # (name, ("members", idx...) | ("generators", txt...))
    relation: tuple | None = None  # ("terms", ((name, c), ...)) | ("search", names)
    reps: tuple = ()  # (label, ("perm", sub) | ("split", sub, (minus...)))
    primes: tuple = ()  # (label, D, I, model_spec)


_SECTION_RE = re.compile(r'^(\w+)(?:\s+"([^"]*)")?$')


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def parse_group_arg(text: str) -> tuple:
    """Inline group spec ``family:param``."""
    m = re.fullmatch(r"\s*([A-Za-z_0-9]+)\s*:\s*(\d+)\s*", text)
    if not m:
        raise ConfigError(f"bad group spec {text!r}; expected family:param")
    return ("family", m.group(1).lower(), int(m.group(2)))


def _parse_model_spec(text: str) -> tuple:
    t = text.strip()
    if t == "good":
        return ("good",)
    if t.startswith("split_mult:"):
        body = t[len("split_mult:"):]
        if not body.isdigit() or int(body) < 1:
            raise ConfigError(f"bad split_mult Tamagawa number in {text!r}")
        return ("split_mult", int(body))
    if t.startswith("custom:"):
        items = []
        for part in t[len("custom:"):].split(";"):
            part = part.strip()
            m = re.fullmatch(r"(\d+)\s*,\s*(\d+)\s*=\s*(\d+)", part)
            if not m:
                raise ConfigError(f"bad custom table entry {part!r}")
            items.append(((int(m.group(1)), int(m.group(2))), int(m.group(3))))
        return ("custom", tuple(sorted(items)))
    raise ConfigError(f"unknown reduction model {text!r}")


def _format_model_spec(spec: tuple) -> str:
    if spec[0] == "good":
        return "good"
    if spec[0] == "split_mult":
        return f"split_mult:{spec[1]}"
    return "custom:" + ";".join(f"{e},{f}={c}" for (e, f), c in spec[1])


def parse_config_text(text: str) -> JobConfig:
    cp = configparser.ConfigParser(
        delimiters=("=",),
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
    )
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    group: tuple | None = None
    p: int | None = None
    factor_bound = DEFAULT_FACTOR_BOUND
    subgroup_defs = []
    relation: tuple | None = None
    reps = []
    primes = []

    def _int(section: str, key: str, value: str) -> int:
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"[{section}] {key} must be an integer") from None

    for section in cp.sections():
        m = _SECTION_RE.match(section)
        if not m:
            raise ConfigError(f"bad section name [{section}]")
        kind, label = m.group(1), m.group(2)
        opts = dict(cp.items(section))
        if kind == "group":
            if "family" in opts:
                fam = opts.pop("family").strip().lower()
                param = _int(section, "param", opts.pop("param", ""))
                group = ("family", fam, param)
            elif "degree" in opts:
                degree = _int(section, "degree", opts.pop("degree"))
                gens_text = opts.pop("generators", "")
                gens = tuple(
                    format_cycles(parse_cycles(t, degree))
                    for t in _split_list(gens_text)
                )
                group = ("explicit", degree, gens)
            else:
                raise ConfigError("[group] needs either family/param or degree")
        elif kind == "params":
            if "p" in opts:
                p = _int(section, "p", opts.pop("p"))
            if "factor_bound" in opts:
                factor_bound = _int(section, "factor_bound", opts.pop("factor_bound"))
        elif kind == "subgroup":
            if not label:
                raise ConfigError('subgroup sections need a name: [subgroup "X"]')
            if "members" in opts:
                idx = tuple(
                    int(tok) for tok in _split_list(opts.pop("members"))
                )
                subgroup_defs.append((label, ("members", idx)))
            elif "generators" in opts:
                subgroup_defs.append(
                    (label, ("generators", tuple(_split_list(opts.pop("generators")))))
                )
            else:
                raise ConfigError(f'[subgroup "{label}"] needs members or generators')
        elif kind == "relation":
            if "terms" in opts:
                terms = []
                for part in _split_list(opts.pop("terms")):
                    m2 = re.fullmatch(r"(.+?):(-?\d+)", part)
                    if not m2:
                        raise ConfigError(f"bad relation term {part!r}")
                    terms.append((m2.group(1).strip(), int(m2.group(2))))
                relation = ("terms", tuple(terms))
            elif "subgroups" in opts:
                relation = ("search", tuple(_split_list(opts.pop("subgroups"))))
            else:
                raise ConfigError("[relation] needs terms or subgroups")
        elif kind == "rep":
            if not label:
                raise ConfigError('rep sections need a name: [rep "rho"]')
            if "perm" in opts:
                reps.append((label, ("perm", opts.pop("perm").strip())))
            elif "base" in opts:
                base = opts.pop("base").strip()
                if not base.startswith("perm:"):
                    raise ConfigError(f'[rep "{label}"] base must be perm:<subgroup>')
                minus = tuple(_split_list(opts.pop("minus", "")))
                reps.append((label, ("split", base[len("perm:"):].strip(), minus)))
            else:
                raise ConfigError(f'[rep "{label}"] needs perm= or base=')
        elif kind == "prime":
            if not label:
                raise ConfigError('prime sections need a label: [prime "l=11"]')
            try:
                dname = opts.pop("D")
                iname = opts.pop("I")
                model = opts.pop("model")
            except KeyError as exc:
                raise ConfigError(
                    f'[prime "{label}"] needs D, I and model'
                ) from exc
            primes.append((label, dname.strip(), iname.strip(), _parse_model_spec(model)))
        else:
            raise ConfigError(f"unknown section [{section}]")
        if kind in ("group", "params", "relation", "subgroup", "rep", "prime") and opts:
            extra = ", ".join(sorted(opts))
            raise ConfigError(f"unknown keys in [{section}]: {extra}")

    if group is None:
        raise ConfigError("config has no [group] section")
    return JobConfig(
        group=group,
        p=p,
        factor_bound=factor_bound,
        subgroup_defs=tuple(subgroup_defs),
        relation=relation,
        reps=tuple(reps),
        primes=tuple(primes),
    )


def job_to_text(job: JobConfig) -> str:
    """Serialise a job back into the config format (canonical layout)."""
    lines = ["[group]"]
    if job.group[0] == "family":
        lines += [f"family = {job.group[1]}", f"param = {job.group[2]}"]
    else:
        lines += [f"degree = {job.group[1]}"]
        if job.group[2]:
            lines += ["generators = " + ", ".join(job.group[2])]
    lines += ["", "[params]"]
    if job.p is not None:
        lines.append(f"p = {job.p}")
    lines.append(f"factor_bound = {job.factor_bound}")
    for name, (kind, payload) in job.subgroup_defs:
        lines += ["", f'[subgroup "{name}"]']
        if kind == "members":
            lines.append("members = " + ", ".join(map(str, payload)))
        else:
            lines.append("generators = " + ", ".join(payload))
    if job.relation is not None:
        lines += ["", "[relation]"]
        if job.relation[0] == "terms":
            lines.append(
                "terms = " + ", ".join(f"{n}:{c}" for n, c in job.relation[1])
            )
        else:
            lines.append("subgroups = " + ", ".join(job.relation[1]))
    for label, recipe in job.reps:
        lines += ["", f'[rep "{label}"]']
        if recipe[0] == "perm":
            lines.append(f"perm = {recipe[1]}")
        else:
            lines.append(f"base = perm:{recipe[1]}")
            if recipe[2]:
                lines.append("minus = " + ", ".join(recipe[2]))
    for label, dname, iname, model in job.primes:
        lines += ["", f'[prime "{label}"]']
        lines.append(f"D = {dname}")
        lines.append(f"I = {iname}")
        lines.append(f"model = {_format_model_spec(model)}")
    return "\n".join(lines) + "\n"


# -- job resolution ------------------------------------------------------------

_DEFAULT_RELATION_SUBS = {
    "dihedral": ("1", "C2", "Cn", "G"),
    "gl2": ("U1", "U2"),
    "borel_quotient": ("1", "Cq", "Cp", "G"),
}

_DEFAULT_REPS = {
    "dihedral": (
        ("1", ("perm", "G")),
        ("eps", ("split", "Cn", ("1",))),
        ("rho", ("split", "C2", ("1",))),
    ),
    "gl2": (
        ("1", ("perm", "G")),
        ("sigma", ("split", "B", ("1",))),
        ("rho", ("split", "U1", ("1", "sigma"))),
    ),
    "borel_quotient": (
        ("1", ("perm", "G")),
        ("eps", ("split", "sq", ("1",))),
        ("block", ("split", "Cp", ("1", "eps"))),
        ("rho", ("split", "Cq", ("1",))),
    ),
}


class ResolvedJob:
    """A job with its group, subgroup table and lazy relation/reps/primes."""

    def __init__(self, job: JobConfig):
        self.job = job
        self.named: NamedGroup | None = None
        if job.group[0] == "family":
            try:
                self.named = named_group(job.group[1], job.group[2])
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            self.group: Group = self.named.group
            self.subgroups: dict[str, Subgroup] = dict(self.named.subgroups)
            self.group_spec = f"{job.group[1]}:{job.group[2]}"
        else:
            degree = job.group[1]
            gens = [parse_cycles(t, degree) for t in job.group[2]]
            self.group = generate(degree, gens)
            self.subgroups = {
                "1": self.group.trivial_subgroup(),
                "G": self.group.whole_subgroup(),
            }
            self.group_spec = f"explicit:{degree}"
        for name, (kind, payload) in job.subgroup_defs:
            if name in self.subgroups:
                raise ConfigError(f"subgroup name {name!r} already taken")
            try:
                if kind == "members":
                    self.subgroups[name] = self.group.subgroup(payload, name=name)
                else:
                    gens = [
                        self.group.index[parse_cycles(t, self.group.degree)]
                        for t in payload
                    ]
                    self.subgroups[name] = self.group.subgroup_generated(
                        gens, name=name
                    )
            except (ValueError, KeyError) as exc:
                raise ConfigError(f'bad [subgroup "{name}"]: {exc}') from exc
        self._theta: BrauerRelation | None = None
        self._reps: list[tuple[str, Representation]] | None = None

    def subgroup(self, name: str) -> Subgroup:
        try:
            return self.subgroups[name]
        except KeyError:
            raise ConfigError(f"unknown subgroup name {name!r}") from None

    def require_p(self) -> int:
        if self.job.p is None:
            raise ConfigError("a prime p is required (--p or [params] p)")
        return self.job.p

    def relation_search_list(self) -> list[Subgroup] | None:
        if self.job.relation is not None and self.job.relation[0] == "search":
            return [self.subgroup(n) for n in self.job.relation[1]]
        if self.named is not None:
            names = _DEFAULT_RELATION_SUBS.get(self.named.family)
            if names:
                return [self.subgroup(n) for n in names]
        return None

    def relation(self) -> BrauerRelation:
        if self._theta is not None:
            return self._theta
        if self.job.relation is not None and self.job.relation[0] == "terms":
            theta = BrauerRelation(
                self.group,
                [(self.subgroup(n), c) for n, c in self.job.relation[1]],
            )
            verdict = verify_relation(theta)
            if not verdict:
                raise InvalidRelationError(
                    "supplied terms are not a relation: class "
                    f"{verdict.witness_class} has character sum "
                    f"{verdict.witness_value}"
                )
        else:
            subs = self.relation_search_list()
            rels = find_relations(self.group, subs)
            if not rels:
                raise ConfigError("no relation found; supply [relation] terms")
            if len(rels) > 1:
                raise ConfigError(
                    "relation is not unique here; supply [relation] terms"
                )
            theta = rels[0]
        self._theta = theta
        return theta

    def reps(self) -> list[tuple[str, Representation]]:
        if self._reps is not None:
            return self._reps
        recipes = self.job.reps
        drop_empty = False
        if not recipes:
            if self.named is None or self.named.family not in _DEFAULT_REPS:
                raise ConfigError(
                    "no [rep] sections and no default recipes for this group"
                )
            recipes = _DEFAULT_REPS[self.named.family]
            drop_empty = True  # p-dependent defaults may degenerate (dim 0)
        built: dict[str, Representation] = {}
        out: list[tuple[str, Representation]] = []
        for label, recipe in recipes:
            if label in built:
                raise ConfigError(f"duplicate rep label {label!r}")
            if recipe[0] == "perm":
                V = perm_rep(self.group, self.subgroup(recipe[1]))
            else:
                base = perm_rep(self.group, self.subgroup(recipe[1]))
                removed: Representation | None = None
                for ref in recipe[2]:
                    if ref not in built:
                        raise ConfigError(
                            f'[rep "{label}"] refers to unknown rep {ref!r}'
                        )
                    removed = (
                        built[ref]
                        if removed is None
                        else direct_sum(removed, built[ref])
                    )
                V = split_off(base, removed) if removed is not None else base
            built[label] = V
            if V.dim == 0 and drop_empty:
                continue
            out.append((label, V))
        self._reps = out
        return out

    def primes(self) -> list[LocalPrimeData]:
        out = []
        for label, dname, iname, model_spec in self.job.primes:
            if model_spec[0] == "good":
                model = Good()
            elif model_spec[0] == "split_mult":
                model = SplitMultiplicative(model_spec[1])
            else:
                model = CustomTable(model_spec[1])
            out.append(
                LocalPrimeData(label, self.subgroup(dname), self.subgroup(iname), model)
            )
        return out


# -- report assembly -----------------------------------------------------------

@dataclass
class Report:
    sections: list[tuple[str, list[str]]] = field(default_factory=list)
    machine: dict[str, str] = field(default_factory=dict)

    def add(self, title: str, lines: list[str]) -> None:
        self.sections.append((title, lines))

    def render(self) -> str:
        out: list[str] = []
        for title, lines in self.sections:
            out.append(f"== {title} ==")
            out.extend(lines)
            out.append("")
        out.append("== machine ==")
        out.extend(f"{k}={v}" for k, v in self.machine.items())
        return "\n".join(out)


def _group_section(rj: ResolvedJob, report: Report) -> None:
    report.add(
        "group",
        [
            f"spec = {rj.group_spec}",
            f"order = {rj.group.order}",
            f"degree = {rj.group.degree}",
        ],
    )
    report.machine["group"] = rj.group_spec
    if rj.job.p is not None:
        report.machine["p"] = str(rj.job.p)


def _relation_section(rj: ResolvedJob, report: Report) -> BrauerRelation:
    theta = rj.relation()
    report.add("relation", [f"theta = {theta}"])
    report.machine["relation"] = ",".join(
        f"{sub.label()}:{c}" for sub, c in theta.terms
    )
    return theta


def _format_audit(rc: RegulatorConstant) -> str:
    return " | ".join(f"[{sub.label()}]: {det}" for sub, _, det in rc.terms)


def _regconst_section(rj: ResolvedJob, report: Report, theta: BrauerRelation) -> None:
    lines = []
    for label, V in rj.reps():
        rc = regulator_constant(theta, V, factor_bound=rj.job.factor_bound)
        lines.append(f"C({label}) = {rc.value}")
        lines.append(f"  dets: {_format_audit(rc)}")
        report.machine[f"C.{label}"] = str(rc.value)
        if rj.job.p is not None:
            report.machine[f"ordC.{label}"] = str(ord_p(rc.ratio, rj.job.p))
    report.add("regulator constants", lines)


def _stheta_section(rj: ResolvedJob, report: Report, theta: BrauerRelation):
    p = rj.require_p()
    st = s_theta(theta, rj.reps(), p)
    lines = [
        f"members = {', '.join(st.members) if st.members else '(none)'}",
        f"exhaustive = {'yes' if st.exhaustive else 'no'}",
        f"note: {st.GRANULARITY_NOTE}",
    ]
    report.add(f"s_theta (p = {p})", lines)
    report.machine["s_theta"] = ",".join(st.members)
    report.machine["s_theta_exhaustive"] = "1" if st.exhaustive else "0"
    return st


def _splitting_section(
    rj: ResolvedJob, report: Report, theta: BrauerRelation, extra: str | None = None
) -> None:
    primes = rj.primes()
    if not primes:
        raise ConfigError("no [prime] sections in config")
    subs = [sub for sub, _ in theta.terms] if theta is not None else []
    if extra is not None:
        subs.append(rj.subgroup(extra))
    lines = []
    for prime in primes:
        for sub in subs:
            s = splitting(rj.group, sub, prime.D, prime.I)
            lines.append(f"{prime.label} in fixed field of [{sub.label()}]: {s}")
            report.machine[f"split.{_machine_key(prime.label)}.{sub.label()}"] = str(s)
    report.add("splittings", lines)


# -- subcommands ----------------------------------------------------------------

def cmd_relations(rj: ResolvedJob) -> Report:
    report = Report()
    _group_section(rj, report)
    subs = rj.relation_search_list()
    rels = find_relations(rj.group, subs)
    if rels:
        lines = [f"theta[{i}] = {rel}" for i, rel in enumerate(rels)]
        for i, rel in enumerate(rels):
            report.machine[f"relation.{i}"] = ",".join(
                f"{sub.label()}:{c}" for sub, c in rel.terms
            )
    else:
        lines = ["no relations found"]
    report.machine["n_relations"] = str(len(rels))
    report.add("relations", lines)
    return report


def cmd_regconst(rj: ResolvedJob) -> Report:
    report = Report()
    _group_section(rj, report)
    theta = _relation_section(rj, report)
    _regconst_section(rj, report, theta)
    return report


def cmd_stheta(rj: ResolvedJob) -> Report:
    report = Report()
    _group_section(rj, report)
    theta = _relation_section(rj, report)
    _regconst_section(rj, report, theta)
    _stheta_section(rj, report, theta)
    return report


def cmd_splitting(rj: ResolvedJob, extra_subgroup: str | None = None) -> Report:
    report = Report()
    _group_section(rj, report)
    theta = _relation_section(rj, report)
    _splitting_section(rj, report, theta, extra_subgroup)
    return report


def cmd_parity(rj: ResolvedJob) -> Report:
    report = Report()
    _group_section(rj, report)
    theta = _relation_section(rj, report)
    _regconst_section(rj, report, theta)
    p = rj.require_p()
    pr = predict_parity(theta, rj.reps(), rj.primes(), p)
    st = pr.s_theta
    report.add(
        f"s_theta (p = {p})",
        [
            f"members = {', '.join(st.members) if st.members else '(none)'}",
            f"exhaustive = {'yes' if st.exhaustive else 'no'}",
            f"note: {st.GRANULARITY_NOTE}",
        ],
    )
    report.machine["s_theta"] = ",".join(st.members)
    report.machine["s_theta_exhaustive"] = "1" if st.exhaustive else "0"
    lines = [
        f"{label} in fixed field of [{sub}]: {s}" for label, sub, s in pr.splittings
    ]
    report.add("splittings", lines)
    for label, sub, s in pr.splittings:
        report.machine[f"split.{_machine_key(label)}.{sub}"] = str(s)
    parity_lines = [
        f"c_ratio_ord = {pr.c_ratio_ord} ({pr.parity})",
        f"conclusion: {pr.conclusion}",
        f"caveat: {pr.caveat}",
    ]
    for w in pr.warnings:
        parity_lines.append(f"warning: {w}")
    report.add("parity", parity_lines)
    report.machine["c_ratio_ord"] = str(pr.c_ratio_ord)
    report.machine["c_ratio_ord_mod2"] = str(pr.c_ratio_ord % 2)
    report.machine["parity"] = pr.parity
    return report


# -- entry point -----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regparity",
        description=(
            "Brauer relations, regulator constants, S_Theta and local "
            "Tamagawa parities for finite permutation groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("relations", "find relations between induced permutation modules"),
        ("regconst", "regulator constants of the job's relation"),
        ("stheta", "regulator constants plus S_Theta membership"),
        ("splitting", "prime splitting types in the relation's fixed fields"),
        ("parity", "full pipeline: relation, constants, S_Theta, parity"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", help="path to a job config file")
        p.add_argument("--group", help="inline group spec, e.g. dihedral:6")
        p.add_argument("--p", type=int, help="prime for valuations")
        p.add_argument(
            "--factor-bound",
            type=int,
            help="trial-division bound for square classes",
        )
        if name == "splitting":
            p.add_argument(
                "--subgroup", help="also report the splitting in this subgroup's field"
            )
    return parser


def _job_from_args(args: argparse.Namespace) -> JobConfig:
    if args.config and args.group:
        raise ConfigError("give either --config or --group, not both")
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        job = parse_config_text(text)
    elif args.group:
        job = JobConfig(group=parse_group_arg(args.group))
    else:
        raise ConfigError("a job needs --config or --group")
    updates = {}
    if args.p is not None:
        updates["p"] = args.p
    if args.factor_bound is not None:
        updates["factor_bound"] = args.factor_bound
    if updates:
        job = JobConfig(
            group=job.group,
            p=updates.get("p", job.p),
            factor_bound=updates.get("factor_bound", job.factor_bound),
            subgroup_defs=job.subgroup_defs,
            relation=job.relation,
            reps=job.reps,
            primes=job.primes,
        )
    return job


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        rj = ResolvedJob(_job_from_args(args))
        if args.command == "relations":
            report = cmd_relations(rj)
        elif args.command == "regconst":
            report = cmd_regconst(rj)
        elif args.command == "stheta":
            report = cmd_stheta(rj)
        elif args.command == "splitting":
            report = cmd_splitting(rj, getattr(args, "subgroup", None))
        else:
            report = cmd_parity(rj)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ModelTableGap as exc:
        print(f"model table gap: {exc}", file=sys.stderr)
        return EXIT_MODEL_GAP
    except (
        DegeneratePairingError,
        FactorBoundExceeded,
        LocalDataError,
        NotSelfDualError,
        InvalidRelationError,
    ) as exc:
        print(f"math precondition violated: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(report.render())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
