"""
Three-way classification of small languages
===========================================

Each relation is first brought into reduced form (no literal can be
dropped).  If all reduced forms are Horn the language is tractable by the
Horn solver; if every non-empty relation contains the all-zero tuple, the
zero assignment solves every instance; otherwise the classifier emits
pp-definitions of x != y and of S(x, y, z) = y != z and (x = y or x = z).
"""

from csplin import catalog
from csplin.classifier import classify
from csplin.formula import Language, Mode

languages = {
    "x + y = z": Language(Mode.LINEAR, (catalog.PLUS,)),
    "S": Language(Mode.LINEAR, (catalog.S_Q,)),
    "(x = 2y or y = u + v) and x != u": Language(Mode.LINEAR, (catalog.EXAMPLE,)),
    "x = y or x = z": Language(Mode.LINEAR, (catalog.EQ_OR,)),
    "affine x - y = z - w": Language(Mode.AFFINE, (catalog.AFFINE_PARALLEL,)),
    "affine H": Language(Mode.AFFINE, (catalog.AFFINE_HARD,)),
}

for label, lang in languages.items():
    report = classify(lang)
    print(f"{label:40s} {report.verdict.value}")

# The full report for the worked example, including the points p and q
print()
print(classify(languages["(x = 2y or y = u + v) and x != u"]).to_text())
