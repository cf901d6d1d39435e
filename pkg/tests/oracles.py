"""Independent reference computations used to check the library."""

from archslice.model import Choice, Prefix, Stop


def transitive_closure(vertices, arcs):
    """Reflexive-transitive closure by Warshall's algorithm over a boolean matrix."""
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    reach = [[i == j for j in range(n)] for i in range(n)]
    for a in arcs:
        reach[index[a.source]][index[a.target]] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return {(vertices[i], vertices[j]) for i in range(n) for j in range(n) if reach[i][j]}


def closure_backward(g, vc):
    pairs = transitive_closure(list(g.vertices), g.arcs)
    return {v for v in g.vertices if any((v, c) in pairs for c in vc)}


def closure_forward(g, vc):
    pairs = transitive_closure(list(g.vertices), g.arcs)
    return {v for v in g.vertices if any((c, v) in pairs for c in vc)}


def flow_oracle(proc):
    """Flows via the descendant relation over event occurrences.

    Occurrence j follows occurrence i in some unfolding iff j lies in the
    subtree under i's continuation. Enumerate all occurrences, then test
    every ordered pair.
    """
    occurrences = []  # (event, set of descendant occurrence ids)

    def walk(node):
        ids = []
        if isinstance(node, Prefix):
            me = len(occurrences)
            occurrences.append((node.event, None))
            below = walk(node.rest)
            occurrences[me] = (node.event, set(below))
            ids = [me] + below
        elif isinstance(node, Choice):
            for b in node.branches:
                ids += walk(b)
        return ids

    walk(proc)
    flows = set()
    for ev_i, desc in occurrences:
        if ev_i.initiated:
            continue
        for j in desc:
            ev_j = occurrences[j][0]
            if ev_j.initiated and ev_j.qualifier != ev_i.qualifier:
                flows.add((ev_i.qualifier, ev_j.qualifier))
    return flows


def derivable(orig, red):
    """True when ``red`` can be obtained from ``orig`` purely by deleting things:
    events, choice branches, or everything (leaving STOP)."""
    if orig == red or isinstance(red, Stop):
        return True
    if isinstance(orig, Prefix):
        if derivable(orig.rest, red):
            return True
        return (isinstance(red, Prefix) and red.event == orig.event
                and derivable(orig.rest, red.rest))
    if isinstance(orig, Choice):
        if isinstance(red, Choice) and _subsequence_match(orig.branches, red.branches):
            return True
        return any(derivable(b, red) for b in orig.branches)
    return False


def _subsequence_match(obs, rbs):
    i = 0
    for rb in rbs:
        while i < len(obs) and not derivable(obs[i], rb):
            i += 1
        if i == len(obs):
            return False
        i += 1
    return True


def is_reduced_spec(orig, red):
    """Structural check that ``red`` is a reduced specification of ``orig``."""
    def reduced_types(otypes, rtypes):
        names = [t.name for t in otypes]
        if [t.name for t in rtypes] != [n for n in names if n in {t.name for t in rtypes}]:
            return False
        by_name = {t.name: t for t in otypes}
        for rt in rtypes:
            ot = by_name[rt.name]
            oel = list(ot.elements)
            if any(e not in oel for e in rt.elements):
                return False
            if [oel.index(e) for e in rt.elements] != sorted(oel.index(e) for e in rt.elements):
                return False
            if not derivable(ot.body, rt.body):
                return False
        return True

    def subsequence(small, big):
        it = iter(big)
        return all(any(x == y for y in it) for x in small)

    return (red.name == orig.name
            and reduced_types(orig.components, red.components)
            and reduced_types(orig.connectors, red.connectors)
            and subsequence(red.configuration.instances, orig.configuration.instances)
            and subsequence(red.configuration.attachments, orig.configuration.attachments))
