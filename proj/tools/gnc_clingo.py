#!/usr/bin/env python3
"""Solver adapter for gdlrepair's emitted ASP programs, built on the clingo
Python module.

    gnc_clingo.py PROGRAM.lp              plain solve, one answer
    gnc_clingo.py GUESS.lp CHECK.lp       guess and check with optimization

In guess-and-check mode an optimal answer of GUESS is accepted once CHECK,
with holds/1 fixed to the answer's ha/lit atoms, has no answer set. An answer
set of CHECK is a play sequence violating the positive properties; GUESS then
gains a copy of CHECK with the actions fixed to that sequence, which rules out
every candidate under which the same sequence is still a violation, and the
search continues.

The guess program is optimized core-guided with inverse linear core
shrinking; set GNC_CLINGO_OPT to other clingo options to override.

Output follows the usual "Answer: / Optimization: / OPTIMUM FOUND" layout.
Exit codes: 10 satisfiable, 20 unsatisfiable, 30 optimum found, 127 clingo
is not installed.
"""

import os
import shlex
import sys
import time

try:
    import clingo
    from clingo import ast
except ImportError:
    print("clingo Python module not available", file=sys.stderr)
    sys.exit(127)

START = time.monotonic()
SHOWN = ("tup", "ha", "lit")
COUNTEREXAMPLES = int(os.environ.get("GNC_CLINGO_CEX", "4"))
OPT_ARGS = ["--opt-strategy=usc", "--opt-usc-shrink=inv"]


def control(args=()):
    return clingo.Control(list(args) + ["--warn=none"])


def log(msg):
    if os.environ.get("GNC_CLINGO_VERBOSE"):
        print(f"[{time.monotonic() - START:.1f}s] {msg}", file=sys.stderr, flush=True)


def print_answer(number, symbols, cost=None):
    print(f"Answer: {number}")
    print(" ".join(str(s) for s in symbols))
    if cost:
        print("Optimization: " + " ".join(str(c) for c in cost))


def plain(path):
    ctl = control()
    ctl.load(path)
    ctl.ground([("base", [])])
    found = []

    def on_model(m):
        found.append(m.symbols(shown=True))

    result = ctl.solve(on_model=on_model)
    if result.satisfiable:
        print_answer(1, found[-1])
        print("SATISFIABLE")
        return 10
    print("UNSATISFIABLE")
    return 20


class Rename(ast.Transformer):
    """Prefixes every predicate except ha/lit."""

    def __init__(self, prefix):
        self.prefix = prefix

    def visit_SymbolicAtom(self, atom):
        sym = atom.symbol
        if sym.ast_type == ast.ASTType.Function and sym.name not in ("ha", "lit"):
            return atom.update(symbol=sym.update(name=self.prefix + sym.name))
        return atom


def head_name(rule):
    head = rule.head
    if head.ast_type == ast.ASTType.Literal and head.atom.ast_type == ast.ASTType.SymbolicAtom:
        return head.atom.symbol.name
    return None


def choice_step(rule):
    """The time step of a `1{does(R,A,t):input(R,A)}1` rule, else None."""
    head = rule.head
    if head.ast_type != ast.ASTType.Aggregate or not head.elements:
        return None
    atom = head.elements[0].literal.atom
    if atom.ast_type != ast.ASTType.SymbolicAtom or atom.symbol.name != "does":
        return None
    return atom.symbol.arguments[2].symbol.number


def parse_check(path):
    """Splits the check program into the rules a refinement copies and the
    action choice steps it replaces."""
    rules, steps = [], []
    with open(path) as f:
        text = f.read()

    def keep(stmt):
        if stmt.ast_type != ast.ASTType.Rule:
            return
        if head_name(stmt) in ("ha", "lit"):
            return
        step = choice_step(stmt)
        if step is not None:
            steps.append(step)
            return
        rules.append(stmt)

    ast.parse_string(text, keep)
    return rules, steps


def refinement(guess, part, rules, steps, does):
    """Adds to the guess program: the check program with the actions fixed
    to `does` must not have a stable model. A constraint of the copy firing
    means the copy has no model; a step the counterexample never reached
    leaves the copy undecided."""
    prefix = part + "_"
    ok = prefix + "ok"
    fixed = {d.arguments[2].number for d in does}
    extra = "".join(f"{prefix}does({d.arguments[0]},{d.arguments[1]},{d.arguments[2]}) :- not {prefix}end({d.arguments[2]}).\n" for d in does)
    extra += "".join(f"{ok} :- not {prefix}end({t}).\n" for t in steps if t not in fixed)
    extra += f":- not {ok}.\n"
    rename = Rename(prefix)
    with ast.ProgramBuilder(guess) as builder:
        stmts = []
        ast.parse_string(f"#program {part}.\n{extra}", stmts.append)
        for stmt in stmts:
            builder.add(stmt)
        for rule in rules:
            rule = rename(rule)
            if rule.head.ast_type == ast.ASTType.Literal and rule.head.atom.ast_type == ast.ASTType.BooleanConstant:
                loc = rule.location
                head = ast.Literal(loc, ast.Sign.NoSign, ast.SymbolicAtom(ast.Function(loc, ok, [], 0)))
                rule = rule.update(head=head)
            builder.add(rule)
    guess.ground([(part, [])])


def counterexamples(check, limit):
    """Up to `limit` violating sequences (their does atoms). Each further one
    is made to open with a different move for some role, so that together
    they refute more candidates."""
    found = []
    banned = []
    while len(found) < limit:
        model = {}

        def on_model(m):
            model["does"] = [s for s in m.symbols(atoms=True) if s.name == "does" and len(s.arguments) == 3]

        if not check.solve(on_model=on_model, assumptions=banned).satisfiable:
            log("no further counterexample")
            break
        log(f"counterexample {len(found) + 1}")
        found.append(model["does"])
        opening = [d for d in model["does"] if d.arguments[2].number == 0]
        extended = False
        for d in opening:
            if check.solve(assumptions=banned + [(d, False)]).satisfiable:
                banned.append((d, False))
                extended = True
                break
        if not extended:
            break
    return found


def guess_and_check(guess_path, check_path):
    opt = os.environ.get("GNC_CLINGO_OPT")
    guess = control(["--opt-mode=opt"] + (shlex.split(opt) if opt is not None else OPT_ARGS))
    guess.load(guess_path)
    guess.ground([("base", [])])

    with open(check_path) as f:
        check_text = f.read()
    rules, steps = parse_check(check_path)

    answers = 0
    lower = None
    while True:
        best = {}

        def on_model(m):
            best["symbols"] = [s for s in m.symbols(atoms=True) if s.name in SHOWN]
            best["cost"] = m.cost

        # Refinements only remove candidates, so the last optimum is a lower
        # bound; any candidate at that cost is optimal without a proof.
        result = None
        if lower is not None:
            guess.configuration.solve.opt_mode = "enum," + ",".join(str(c) for c in lower)
            guess.configuration.solve.models = 1
            result = guess.solve(on_model=on_model)
            log(f"bounded search at {lower}: {'found' if result.satisfiable else 'none'}")
        if result is None or not result.satisfiable:
            guess.configuration.solve.opt_mode = "opt"
            guess.configuration.solve.models = 0
            result = guess.solve(on_model=on_model)
            log("optimization done")
        if not result.satisfiable:
            print("UNSATISFIABLE")
            return 20
        lower = best["cost"]
        log("candidate " + " ".join(str(x) for x in best["symbols"] if x.name == "tup"))
        symbols = best["symbols"]
        answers += 1
        # A fresh check program with the candidate as facts grounds much
        # smaller than one over holds/1 externals for the whole domain.
        check = control()
        check.add("base", [], check_text)
        check.add("candidate", [], "".join(f"holds({s}).\n" for s in symbols if s.name in ("ha", "lit")))
        check.ground([("base", []), ("candidate", [])])
        found = counterexamples(check, COUNTEREXAMPLES)
        log(f"round {answers}: cost {best['cost']}, {len(found)} counterexamples")
        if not found:
            print_answer(answers, symbols, best["cost"])
            print("OPTIMUM FOUND")
            return 30
        for k, does in enumerate(found):
            refinement(guess, f"cex{answers}_{k}", rules, steps, does)


def main(argv):
    if len(argv) == 2:
        return plain(argv[1])
    if len(argv) == 3:
        return guess_and_check(argv[1], argv[2])
    print(__doc__, file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main(sys.argv))
