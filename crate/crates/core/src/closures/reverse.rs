//! Reversal of visibly pushdown languages.
//!
//! Reversing a tagged word swaps calls and returns, so the reversed machine
//! runs the original backwards: an original return becomes a call that
//! pushes what the original popped, and an original call becomes a return
//! that checks the pushed symbol. Original returns on the empty stack
//! become pending calls, marked so that only they may remain open.

use crate::automata::{Nvpa, Vpa, VpaBuilder, BOTTOM};
use crate::nested::Letter;

pub fn vpl_reverse(m: &Vpa) -> Nvpa {
    let mut bld = VpaBuilder::new(m.alphabet().clone(), m.stack_name(BOTTOM));
    for name in m.state_names() {
        bld.state(name);
    }
    for name in &m.stack_names()[1..] {
        bld.stack_symbol(name);
    }
    let marker = bld.fresh_stack_symbol("⊥pending");
    let k = m.alphabet().len();
    for q in 0..m.num_states() {
        for l in (0..k).map(Letter) {
            if let Some(t) = m.internal(q, l) {
                bld.internal(t, l, q);
            }
            if let Some((t, g)) = m.call(q, l) {
                bld.ret(t, l, g, q);
                if m.is_stack_accepting(g) {
                    bld.ret(t, l, BOTTOM, q);
                }
            }
            for g in 0..m.num_stack_symbols() {
                if let Some(t) = m.ret(q, l, g) {
                    bld.call(t, l, q, if g == BOTTOM { marker } else { g });
                }
            }
        }
    }
    for q in 0..m.num_states() {
        if m.is_accepting(q) {
            bld.initial(q);
        }
    }
    bld.accept(m.initial()).accept_stack(marker);
    bld.build_nvpa().expect("reversal is well formed")
}
