"""Separation verdicts and the explicit Bell witness inside M2 corners."""

# %%
from opalg import is_product_state, is_separated, make_algebra, ppt_check

for left, right in [([1, 1], [3]), ([2], [2]), ([1, 2], [2, 1])]:
    v = is_separated(make_algebra(left), make_algebra(right))
    line = f"{left} (x) {right}: separated={v.separated}"
    if v.witness is not None:
        w = v.witness
        pos = w.state.support()[0]
        line += (f", witness CHSH={w.value:.15f} in block pair {w.tensor.pairs[pos]}"
                 f", product={is_product_state(w.state, w.tensor)}"
                 f", PPT min eig={ppt_check(w.state, w.tensor)[1]:.3f}")
    print(line)
