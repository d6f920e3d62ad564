"""Materialisation (seminaive and modular) and modular incremental maintenance.

A :class:`MaterialisationState` owns the explicit facts, the materialisation
with its nonrecursive counters, and one list of module objects per stratum.
Modules follow a four-function protocol::

    add(i_pos, i_neg, delta) -> J
    delete(i_pos, i_neg, delta, nr) -> J
    red(i_pos, i_neg, delta) -> J
    diff(i_pos, d_pos, d_neg) -> J

``nr`` maps facts to their nonrecursive derivation count.  Explicit facts
count as one nonrecursive derivation, so a fact that is still explicit is
never overdeleted.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .apply import Counters, apply_rules
from .datalog import Program, Stratification, detect_modules, stratify
from .factstore import DatasetView, Difference, FactSet, FactStore, to_factset
from .generic import GenericModule
from .stc import SymmetricTransitiveModule
from .tc import TransitiveModule

log = logging.getLogger(__name__)

MODES = ("modular", "seminaive")


def build_module(spec, counters=None):
    if spec.kind == "tc":
        return TransitiveModule(spec.predicate, spec.rules, counters)
    if spec.kind == "stc":
        return SymmetricTransitiveModule(spec.predicate, spec.rules, counters)
    return GenericModule(spec.rules, counters)


@dataclass
class MaterialisationState:
    program: Program
    strat: Stratification
    explicit: FactSet
    facts: FactStore
    modules: dict  # stratum -> list of module objects
    mode: str = "modular"
    counters: Counters = field(default_factory=Counters)
    # observer(procedure, stratum, index, own_previous, argument); used by tests
    observer: object = None

    @property
    def nr(self):
        return self.facts.nr

    def out(self, s):
        return lambda f: self.strat.stratum(f.pred) == s

    def module_summary(self):
        kinds = {"generic": 0, "tc": 0, "stc": 0}
        for mods in self.modules.values():
            for m in mods:
                kinds[m.kind] += 1
        return kinds

    def _call(self, proc, s, i, own, arg):
        if self.observer is not None:
            self.observer(proc, s, i, own, arg)


def _new_state(program, explicit, mode, modules, lam, trace):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "seminaive":
        modules = "off"
    strat = stratify(program, modules=modules, lam=lam)
    counters = Counters(trace=trace)
    mods = {s: [build_module(spec, counters) for spec in strat.modules[s]] for s in strat.strata()}
    return MaterialisationState(program, strat, to_factset(explicit).copy(), FactStore(), mods,
                                mode, counters)


def _count_nr(store, delta):
    def on_instance(rule, binding, head):
        store.adjust_nr(head, delta)
    return on_instance


def materialise(program: Program, explicit, mode: str = "modular", modules: str = "auto",
                lam: dict | None = None, trace: bool = False) -> MaterialisationState:
    """Compute the materialisation of ``explicit`` under ``program``.

    ``mode="seminaive"`` runs plain seminaive evaluation stratum by stratum;
    ``mode="modular"`` runs the modular variant with TC/STC modules where
    ``modules="auto"`` detects them.
    """
    st = _new_state(program, explicit, mode, modules, lam, trace)
    I, c = st.facts, st.counters
    top = max([st.strat.max_stratum] + [st.strat.stratum(f.pred) for f in st.explicit])
    with c.phase("materialise") as stats:
        for s in range(1, top + 1):
            c.stratum = s
            delta = FactSet()
            for f in st.explicit:
                if st.strat.stratum(f.pred) == s:
                    I.adjust_nr(f, 1)
                    delta.insert(f)
            delta.update(apply_rules(st.strat.nonrecursive.get(s, ()), I, I, counters=c,
                                     on_instance=_count_nr(I, 1)))
            if mode == "seminaive":
                rules = st.strat.recursive.get(s, ())
                while delta:
                    I.update(delta)
                    delta = apply_rules(rules, I, I, delta, None, c).minus(I)
            else:
                mods = st.modules.get(s, [])
                outs = [FactSet() for _ in mods]
                while delta:
                    I.update(delta)
                    for i, m in enumerate(mods):
                        arg = delta.minus(outs[i])
                        st._call("add", s, i, outs[i], arg)
                        outs[i] = m.add(I, I, arg)
                    delta = FactSet().union(*outs).minus(I)
        stats.facts_added += len(I)
    return st


def incremental_update(state: MaterialisationState, deletions=(), insertions=()) -> MaterialisationState:
    """Move ``state`` from ``Mat(E)`` to ``Mat((E - deletions) | insertions)`` in place."""
    E = state.explicit
    insertions = FactSet(insertions)
    dels = FactSet(f for f in deletions if f in E and f not in insertions)
    ins = FactSet(f for f in insertions if f not in E)
    c = state.counters
    c.reset()
    I = state.facts
    D, A = FactSet(), FactSet()
    top = max([state.strat.max_stratum] + [state.strat.stratum(f.pred) for f in ins])
    for s in range(1, top + 1):
        c.stratum = s
        _overdelete(state, s, dels, D, A)
        _rederive_insert(state, s, ins, D, A)
    for f in dels:
        E.remove(f)
    E.update(ins)
    for f in D:
        if f not in A:
            I.remove(f)
            if I.nr.pop(f, 0):
                log.warning("dropping %s with a nonzero nonrecursive counter", f)
    I.update(A)
    return state


def _overdelete(st, s, dels, D, A):
    I, nr, c = st.facts, st.facts.nr, st.counters
    strat = st.strat
    mods = st.modules.get(s, [])
    with c.phase("overdelete") as stats:
        removed, added = D.minus(A), A.minus(D)
        candidates = FactSet()
        for f in dels:
            if strat.stratum(f.pred) == s:
                I.adjust_nr(f, -1)
                candidates.insert(f)
        candidates.update(apply_rules(strat.nonrecursive.get(s, ()), I, I, removed, added, c,
                                      on_instance=_count_nr(I, -1)))
        for m in mods:
            candidates.update(m.diff(I, removed, added))
        # only facts left without nonrecursive support start the overdeletion
        delta = FactSet(f for f in candidates if nr.get(f, 0) == 0)
        outs = [FactSet() for _ in mods]
        i_pos = DatasetView(I, minus=(Difference(D, A),))
        i_neg = DatasetView(I, plus=(A,))
        while delta:
            for i, m in enumerate(mods):
                arg = delta.minus(outs[i])
                st._call("delete", s, i, outs[i], arg)
                outs[i] = m.delete(i_pos, i_neg, arg, nr)
            D.update(delta)
            stats.facts_deleted += len(delta)
            delta = FactSet().union(*outs).minus(D)


def _rederive_insert(st, s, ins, D, A):
    I, c = st.facts, st.counters
    strat = st.strat
    mods = st.modules.get(s, [])
    removed, added = D.minus(A), A.minus(D)
    cur = DatasetView(I, minus=(D,), plus=(A,))
    outs = [FactSet() for _ in mods]
    delta = FactSet()
    with c.phase("insert"):
        for f in ins:
            if strat.stratum(f.pred) == s:
                I.adjust_nr(f, 1)
                delta.insert(f)
        delta.update(apply_rules(strat.nonrecursive.get(s, ()), cur, cur, added, removed, c,
                                 on_instance=_count_nr(I, 1)))
    for i, m in enumerate(mods):
        with c.phase("rederive") as stats:
            red = m.red(I, cur, removed)
            stats.facts_rederived += len(red)
        with c.phase("insert"):
            delta.update(red)
            # the module's own rederived facts are visible to its diff: neither the
            # diff over (I - D) | A nor the add loop below would see them otherwise
            delta.update(m.diff(DatasetView(cur, plus=(red,)), added, removed))
        # facts that just regained nonrecursive support are external input for every
        # module, so they are not excluded from the module's first add call
        outs[i] = FactSet(f for f in red if I.nr.get(f, 0) == 0)
    with c.phase("insert") as stats:
        while delta:
            new = FactSet(f for f in delta if f not in cur)
            A.update(new)
            stats.facts_added += len(new)
            for i, m in enumerate(mods):
                arg = delta.minus(outs[i])
                st._call("add", s, i, outs[i], arg)
                outs[i] = m.add(cur, cur, arg)
            delta = FactSet().union(*outs).minus(cur)


def instance_counter(state: MaterialisationState) -> dict:
    """Per-phase work counters of the last operation on ``state``."""
    return dict(state.counters.phases)


def recount_nr(state: MaterialisationState) -> dict:
    """Nonrecursive counters recomputed from scratch (for checking the maintained ones)."""
    out = {}
    for f in state.explicit:
        out[f] = out.get(f, 0) + 1
    I = state.facts
    for s in state.strat.strata():
        for h in _heads(state.strat.nonrecursive.get(s, ()), I):
            out[h] = out.get(h, 0) + 1
    return out


def _heads(rules, I):
    heads = []
    apply_rules(rules, I, I, on_instance=lambda r, b, h: heads.append(h))
    return heads


__all__ = ["MaterialisationState", "materialise", "incremental_update", "instance_counter",
           "recount_nr", "detect_modules", "build_module", "MODES"]
