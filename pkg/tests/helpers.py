"""Label arithmetic shared by the engine test modules.

Stage classes are named after their minimal representative: a word of
length m at stage n is front-padded with n-m unit atoms, a path is
front-padded with identity loops at its source.  An empty alphabet
collapses the whole tower onto the unit object, whose label stays "()".
"""


def word_label(word, n):
    if n == 0:
        return "()"
    atoms = ["()"] * (n - len(word)) + list(word)
    if n == 1:
        return atoms[0]
    return "(" + ",".join(atoms) + ")"


def path_label(src, labs, n):
    if n == 0:
        return f"id_{src}"
    atoms = [f"id_{src}"] * (n - len(labs)) + list(labs)
    if n == 1:
        return atoms[0]
    return "(" + ",".join(atoms) + ")"


def word_stage_labels(letters, words, n):
    # coproduct with an empty summand returns the unit object unchanged,
    # so with no letters every stage is the unit and keeps its label
    if not letters:
        return ["()"]
    return [word_label(w, n) for w in words]


def path_stage_labels(paths, n):
    return [path_label(src, labs, n) for src, labs, _ in paths]
