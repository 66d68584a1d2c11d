"""
Pattern dialect: expressions, branches, and literal expansion
=============================================================

The dialect keeps just enough regex to describe DNA motifs: literal bases,
top-level alternation with '|', and single-base classes like (a|c|t).
Everything expands to fixed-length literal k-mers before any matching.
"""

from kmerscan import (
    BUILTIN_PATTERN_TEXT,
    builtin_expression_set,
    expand_to_literals,
    parse_expressions,
    render_expression_set,
)

# A small hand-written pattern file: one expression per line, '#' comments.
text = """
# toy motifs
acg
c(a|t)t
agg|tga
"""

exprs = parse_expressions(text)
print("parsed expressions:")
print(render_expression_set(exprs))

# Expansion multiplies out every class position, branch by branch.
# c(a|t)t therefore becomes the two literals cat and ctt.
table = expand_to_literals(exprs)
print("\nliterals (literal -> expression id):")
for literal, expr_id in table.literals:
    print(f"  {literal} -> {expr_id}")

# The built-in set ships nine expressions from the classic regex-dna
# benchmark. Each class position doubles or triples the literal count.
builtin = builtin_expression_set()
builtin_table = expand_to_literals(builtin)
print(f"\nbuilt-in set: {len(builtin)} expressions, {len(builtin_table)} literals")
print(BUILTIN_PATTERN_TEXT)
