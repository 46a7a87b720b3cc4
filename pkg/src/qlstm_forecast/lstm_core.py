"""Classical LSTM cell and sequence network with exact backpropagation
through time.

One cell step, on the concatenation z = [h_{t-1}, x_t]:

    i = sigmoid(z w_i + b_i)        input gate
    f = sigmoid(z w_f + b_f)        forget gate
    g = tanh(z w_c + b_c)           candidate cell state
    C_t = i * g + f * C_{t-1}
    o = sigmoid(z w_o + b_o)        output gate
    h_t = o * tanh(C_t)

A linear head maps the final hidden state to the scalar prediction:
y = head_w . h_T + head_b. Weight matrices have shape
[(hidden + input) x hidden]; the first ``hidden`` rows act on h_{t-1} and
the rest on x_t, so split W_h / W_x formulations are the row blocks of
these matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import EmptyInputError, NumericError, ShapeError, StateError


def _sigmoid(x):
    # split by sign to avoid overflow in exp for large |x|
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


@dataclass
class LstmParams:
    w_i: np.ndarray
    w_f: np.ndarray
    w_c: np.ndarray
    w_o: np.ndarray
    b_i: np.ndarray
    b_f: np.ndarray
    b_c: np.ndarray
    b_o: np.ndarray
    head_w: np.ndarray
    head_b: float

    @property
    def hidden_size(self) -> int:
        return self.w_i.shape[1]

    @property
    def input_size(self) -> int:
        return self.w_i.shape[0] - self.w_i.shape[1]


@dataclass
class LstmState:
    h: np.ndarray
    c: np.ndarray


def zero_state(hidden_size: int) -> LstmState:
    return LstmState(np.zeros(hidden_size), np.zeros(hidden_size))


def init_params(hidden_size: int, input_size: int, seed: int) -> LstmParams:
    """Uniform weights in [-k, k] with k = 1/sqrt(hidden + input); biases
    zero except the forget gate's, which starts at +1 to keep early
    gradients alive."""
    rng = np.random.default_rng(seed)
    k = 1.0 / np.sqrt(hidden_size + input_size)

    def w():
        return rng.uniform(-k, k, (hidden_size + input_size, hidden_size))

    return LstmParams(
        w_i=w(), w_f=w(), w_c=w(), w_o=w(),
        b_i=np.zeros(hidden_size),
        b_f=np.ones(hidden_size),
        b_c=np.zeros(hidden_size),
        b_o=np.zeros(hidden_size),
        head_w=rng.uniform(-k, k, hidden_size),
        head_b=0.0,
    )


def zero_params(hidden_size: int, input_size: int) -> LstmParams:
    shape = (hidden_size + input_size, hidden_size)
    return LstmParams(
        w_i=np.zeros(shape), w_f=np.zeros(shape),
        w_c=np.zeros(shape), w_o=np.zeros(shape),
        b_i=np.zeros(hidden_size), b_f=np.zeros(hidden_size),
        b_c=np.zeros(hidden_size), b_o=np.zeros(hidden_size),
        head_w=np.zeros(hidden_size), head_b=0.0,
    )


def flatten_params(params: LstmParams) -> np.ndarray:
    parts = [np.ravel(getattr(params, f.name)) for f in fields(LstmParams)]
    return np.concatenate(parts)


def unflatten_params(template: LstmParams, flat: np.ndarray) -> LstmParams:
    values = {}
    offset = 0
    for f in fields(LstmParams):
        ref = getattr(template, f.name)
        size = np.size(ref)
        chunk = flat[offset:offset + size]
        offset += size
        values[f.name] = float(chunk[0]) if np.isscalar(ref) else chunk.reshape(np.shape(ref)).copy()
    if offset != len(flat):
        raise ShapeError(f"flat vector has {len(flat)} entries, params need {offset}")
    return LstmParams(**values)


def lstm_step(params: LstmParams, x_t, state: LstmState):
    """One cell step. Returns (h_t, new_state, cache)."""
    x_t = np.asarray(x_t, dtype=float)
    if x_t.shape != (params.input_size,):
        raise ShapeError(f"input width {x_t.shape} does not match "
                         f"{params.input_size}")
    if not np.all(np.isfinite(x_t)):
        raise NumericError("non-finite LSTM input")
    z = np.concatenate([state.h, x_t])
    i = _sigmoid(z @ params.w_i + params.b_i)
    f = _sigmoid(z @ params.w_f + params.b_f)
    g = np.tanh(z @ params.w_c + params.b_c)
    c_t = i * g + f * state.c
    o = _sigmoid(z @ params.w_o + params.b_o)
    tanh_c = np.tanh(c_t)
    h_t = o * tanh_c
    cache = {"z": z, "i": i, "f": f, "g": g, "o": o,
             "c_prev": state.c, "tanh_c": tanh_c}
    return h_t, LstmState(h_t, c_t), cache


def lstm_forward(params: LstmParams, sequence):
    """Run the cell over a sequence from the zero state.

    Returns (prediction, caches) where prediction = head_w . h_T + head_b.
    """
    sequence = np.asarray(sequence, dtype=float)
    if sequence.ndim != 2 or sequence.shape[0] == 0:
        raise EmptyInputError("sequence must be a non-empty [steps x features] array")
    state = zero_state(params.hidden_size)
    caches = []
    h = state.h
    for t in range(sequence.shape[0]):
        h, state, cache = lstm_step(params, sequence[t], state)
        caches.append(cache)
    prediction = float(params.head_w @ h + params.head_b)
    return prediction, {"steps": caches, "h_final": h,
                        "hidden": params.hidden_size,
                        "input": params.input_size}


def lstm_backward(params: LstmParams, caches, upstream: float) -> LstmParams:
    """Exact BPTT gradient of ``upstream * prediction`` w.r.t. every
    parameter, returned in LstmParams shape."""
    if not isinstance(caches, dict) or "steps" not in caches:
        raise StateError("caches do not come from lstm_forward")
    if caches["hidden"] != params.hidden_size or caches["input"] != params.input_size:
        raise StateError("caches were built from differently-shaped params")
    hidden = params.hidden_size
    grads = zero_params(hidden, params.input_size)

    grads.head_w = upstream * caches["h_final"]
    grads.head_b = float(upstream)
    dh = upstream * params.head_w
    dc = np.zeros(hidden)

    for cache in reversed(caches["steps"]):
        i, f, g, o = cache["i"], cache["f"], cache["g"], cache["o"]
        tanh_c = cache["tanh_c"]
        do = dh * tanh_c
        dc = dc + dh * o * (1.0 - tanh_c * tanh_c)
        di = dc * g
        dg = dc * i
        df = dc * cache["c_prev"]
        dc_prev = dc * f

        dz_i = di * i * (1.0 - i)
        dz_f = df * f * (1.0 - f)
        dz_c = dg * (1.0 - g * g)
        dz_o = do * o * (1.0 - o)

        z = cache["z"]
        grads.w_i += np.outer(z, dz_i)
        grads.w_f += np.outer(z, dz_f)
        grads.w_c += np.outer(z, dz_c)
        grads.w_o += np.outer(z, dz_o)
        grads.b_i += dz_i
        grads.b_f += dz_f
        grads.b_c += dz_c
        grads.b_o += dz_o

        dz = (params.w_i @ dz_i + params.w_f @ dz_f
              + params.w_c @ dz_c + params.w_o @ dz_o)
        dh = dz[:hidden]
        dc = dc_prev
    return grads
