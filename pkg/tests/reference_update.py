"""Hand-rolled single-transition update, independent of the library code.

Pure-Python loops only: explicit dot products, explicit backprop, explicit
clipping. Used to pin down exactly what one train step must do to a
1-transition batch.
"""

import math


def _act(name, z):
    if name == "relu":
        return z if z > 0 else 0.0
    if name == "tanh":
        return math.tanh(z)
    return z if z > 0 else 0.01 * z  # leaky_relu


def _act_deriv(name, z):
    if name == "relu":
        return 1.0 if z > 0 else 0.0
    if name == "tanh":
        t = math.tanh(z)
        return 1.0 - t * t
    return 1.0 if z > 0 else 0.01


def ref_forward(ws, bs, act, x):
    """Returns (q, activations per layer, pre-activations per hidden layer)."""
    h = [float(v) for v in x]
    hs = [h]
    zs = []
    for layer, (w, b) in enumerate(zip(ws, bs)):
        last = layer == len(ws) - 1
        z = [
            float(b[j]) + sum(h[i] * float(w[i][j]) for i in range(len(h)))
            for j in range(len(b))
        ]
        if last:
            h = z
        else:
            zs.append(z)
            h = [_act(act, v) for v in z]
        hs.append(h)
    return hs[-1], hs, zs


def _clip(v, c):
    return max(-c, min(c, v))


def ref_single_update(ws, bs, act, tws, tbs, transition, gamma, lr, clip_c=1.0):
    """One Double-DQN SGD step on a single transition.

    ws/bs: online weights (nested lists or arrays), tws/tbs: target net.
    transition: (s, action, reward, s_next, done).
    Returns (new_ws, new_bs, loss).
    """
    s, action, reward, s_next, done = transition

    if done:
        y = float(reward)
    else:
        q_next_online, _, _ = ref_forward(ws, bs, act, s_next)
        best, best_q = 0, q_next_online[0]
        for j in range(1, len(q_next_online)):
            if q_next_online[j] > best_q:
                best, best_q = j, q_next_online[j]
        q_next_target, _, _ = ref_forward(tws, tbs, act, s_next)
        y = float(reward) + gamma * q_next_target[best]

    q, hs, zs = ref_forward(ws, bs, act, s)
    td = y - q[action]
    loss = 0.5 * td * td if abs(td) <= 1.0 else abs(td) - 0.5

    # output-layer error: -clip(td) at the chosen action
    eps = [0.0] * len(q)
    eps[action] = -_clip(td, 1.0)

    n_layers = len(ws)
    dws = [None] * n_layers
    dbs = [None] * n_layers
    for layer in range(n_layers - 1, -1, -1):
        h_prev = hs[layer]
        dws[layer] = [[h_prev[i] * eps[j] for j in range(len(eps))] for i in range(len(h_prev))]
        dbs[layer] = list(eps)
        if layer > 0:
            w = ws[layer]
            upstream = [
                sum(float(w[i][j]) * eps[j] for j in range(len(eps)))
                for i in range(len(h_prev))
            ]
            eps = [u * _act_deriv(act, z) for u, z in zip(upstream, zs[layer - 1])]

    new_ws = [
        [
            [float(w[i][j]) - lr * _clip(dws[layer][i][j], clip_c) for j in range(len(dws[layer][i]))]
            for i in range(len(dws[layer]))
        ]
        for layer, w in enumerate(ws)
    ]
    new_bs = [
        [float(b[j]) - lr * _clip(dbs[layer][j], clip_c) for j in range(len(dbs[layer]))]
        for layer, b in enumerate(bs)
    ]
    return new_ws, new_bs, loss
