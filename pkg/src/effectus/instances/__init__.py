"""The three model categories: partial functions, subdistribution kernels and
finite-dimensional CP maps."""
from .pfn import Pfn, PfnMorphism, PfnObject
from .prob import Prob, ProbMorphism, ProbObject
from .quantum import M, QMorphism, QObject, Quantum, is_cp


def get_instance(name: str, **kwargs):
    table = {"pfn": Pfn, "prob": Prob, "quantum": Quantum}
    if name not in table:
        raise KeyError(f"unknown instance {name!r}; expected one of {sorted(table)}")
    return table[name](**kwargs)
