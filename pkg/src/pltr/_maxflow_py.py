"""Pure-Python Dinic max-flow; reference twin of the compiled ``_maxflow`` kernel.

Arc ``2*i`` is edge ``i`` and arc ``2*i + 1`` its reverse. Arcs leaving a
node are visited in arc-id order, so results are deterministic for a fixed
edge order.
"""

from collections import deque


def dinic(n_nodes, tails, heads, caps, source, sink):
    """Return ``(value, flows, reaches_sink)``.

    ``flows[i]`` is the flow on edge ``i``; ``reaches_sink[v]`` is true iff
    ``v`` can reach ``sink`` in the final residual network.
    """
    n_edges = len(tails)
    to = [0] * (2 * n_edges)
    res = [0] * (2 * n_edges)
    deg = [0] * (n_nodes + 1)
    for i in range(n_edges):
        u, v, c = int(tails[i]), int(heads[i]), int(caps[i])
        if c < 0:
            raise ValueError(f"negative capacity on edge {i}")
        to[2 * i], res[2 * i] = v, c
        to[2 * i + 1] = u
        deg[u + 1] += 1
        deg[v + 1] += 1
    for v in range(n_nodes):
        deg[v + 1] += deg[v]
    start = deg
    adj = [0] * (2 * n_edges)
    fill = start[:-1]
    fill = list(fill)
    for a in range(2 * n_edges):
        u = to[a ^ 1]
        adj[fill[u]] = a
        fill[u] += 1

    value = 0
    while source != sink:
        level = [-1] * n_nodes
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for idx in range(start[u], start[u + 1]):
                a = adj[idx]
                v = to[a]
                if res[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if level[sink] < 0:
            break
        it = start[:-1]
        it = list(it)
        path = []
        u = source
        while True:
            if u == sink:
                push = min(res[a] for a in path)
                for a in path:
                    res[a] -= push
                    res[a ^ 1] += push
                value += push
                path.clear()
                u = source
                continue
            end = start[u + 1]
            while it[u] < end:
                a = adj[it[u]]
                if res[a] > 0 and level[to[a]] == level[u] + 1:
                    break
                it[u] += 1
            if it[u] < end:
                a = adj[it[u]]
                path.append(a)
                u = to[a]
            else:
                if u == source:
                    break
                level[u] = -1
                a = path.pop()
                u = to[a ^ 1]
                it[u] += 1

    flows = [int(caps[i]) - res[2 * i] for i in range(n_edges)]
    reaches = [False] * n_nodes
    reaches[sink] = True
    queue = deque([sink])
    while queue:
        v = queue.popleft()
        for idx in range(start[v], start[v + 1]):
            b = adj[idx]
            u = to[b]
            if not reaches[u] and res[b ^ 1] > 0:
                reaches[u] = True
                queue.append(u)
    return value, flows, reaches
