# test.py
# Quick smoke run over the main entry points; the full suite lives in tests/.

from src.algebra.hilbert import hilbert_checks
from src.algebra.mf import verify
from src.data.graph_format import parse_graph_text
from src.invariants.rank import example_rank_two_witness, sign_pattern_factorizations
from src.reports.classification import cmd_classify
from src.ui.tables import render_classification, render_point_scheme
from src.graphs.pointscheme import components


print("Classification n=5")
print(render_classification(cmd_classify(5)))

print("\nPoint scheme of the 6-cycle with an isolated vertex")
g = parse_graph_text("n=7; edges=1-2,2-3,3-4,4-5,5-6,1-6")
print(render_point_scheme(components(g.to_sign_system())))

print("\nMatrix factorizations")
print("rank-two example valid:", verify(example_rank_two_witness()).ok)
print("sign patterns n=4 valid:", all(verify(mf).ok for mf in sign_pattern_factorizations(4)))

print("\nHilbert checks n=3")
print("ok:", hilbert_checks(3, 8).ok)
