//! The irregular 2x2 kernel `(W1, W2) -> (W-, W+)`.
//!
//! Output symbol layout: `W-` emits the pair `(y1, y2)` as index
//! `y1 * |Y2| + y2`; `W+` emits the triple `(y1, y2, u1)` as index
//! `(y1 * |Y2| + y2) * 2 + u1`.

use crate::channels::DiscreteChannel;

/// `W-(y1,y2 | u1) = Σ_{u2} ½ W1(y1 | u1⊕u2) W2(y2 | u2)`.
pub fn kernel_minus(w1: &DiscreteChannel, w2: &DiscreteChannel) -> DiscreteChannel {
    let (n1, n2) = (w1.len(), w2.len());
    let mut p0 = Vec::with_capacity(n1 * n2);
    let mut p1 = Vec::with_capacity(n1 * n2);
    for y1 in 0..n1 {
        let (a0, a1) = (w1.p0()[y1], w1.p1()[y1]);
        for y2 in 0..n2 {
            let (b0, b1) = (w2.p0()[y2], w2.p1()[y2]);
            p0.push(0.5 * (a0 * b0 + a1 * b1));
            p1.push(0.5 * (a1 * b0 + a0 * b1));
        }
    }
    DiscreteChannel::from_rows_unchecked(p0, p1)
}

/// `W+(y1,y2,u1 | u2) = ½ W1(y1 | u1⊕u2) W2(y2 | u2)`.
pub fn kernel_plus(w1: &DiscreteChannel, w2: &DiscreteChannel) -> DiscreteChannel {
    let (n1, n2) = (w1.len(), w2.len());
    let mut p0 = Vec::with_capacity(2 * n1 * n2);
    let mut p1 = Vec::with_capacity(2 * n1 * n2);
    for y1 in 0..n1 {
        let (a0, a1) = (w1.p0()[y1], w1.p1()[y1]);
        for y2 in 0..n2 {
            let (b0, b1) = (w2.p0()[y2], w2.p1()[y2]);
            // u1 = 0
            p0.push(0.5 * a0 * b0);
            p1.push(0.5 * a1 * b1);
            // u1 = 1
            p0.push(0.5 * a1 * b0);
            p1.push(0.5 * a0 * b1);
        }
    }
    DiscreteChannel::from_rows_unchecked(p0, p1)
}
