"""Modular materialisation and incremental maintenance of stratified datalog."""
from .datalog import (ArityClash, Atom, DatalogError, NotStratifiable, Program, Rule, UnsafeRule,
                      Var, fact, stratify)
from .engine import MaterialisationState, incremental_update, instance_counter, materialise
from .factstore import FactSet, FactStore
from .parser import ParseError, parse_facts, parse_program, serialise_dataset

__version__ = "0.1.0"

__all__ = ["ArityClash", "Atom", "DatalogError", "NotStratifiable", "Program", "Rule",
           "UnsafeRule", "Var", "fact", "stratify", "MaterialisationState", "incremental_update",
           "instance_counter", "materialise", "FactSet", "FactStore", "ParseError", "parse_facts",
           "parse_program", "serialise_dataset"]
