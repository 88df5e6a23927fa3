//! Commuting conversions: hoisting let-style eliminators out of linear
//! elimination frames, and the canonical ordering of adjacent independent
//! lets by first-use position.
//!
//! Hoisting only crosses elimination frames; pulling a let out of an
//! additive pair or case branch would change resource accounting.

use crate::syntax::expr::SlotId;
use crate::syntax::{linear_occurrences, ops, Expr};

use super::navigate::{replace_child, Path};
use super::rules::Rule;

/// The linear operand positions of elimination frames, as child indices.
fn frame_holes(e: &Expr) -> &'static [u32] {
    use Expr::*;
    match e {
        LinApp(_, _) => &[0, 1],
        WithFst(_) | WithSnd(_) => &[0],
        TenLet { .. } | UnitLet { .. } | SqLet { .. } | LLet { .. } | PlusCase { .. } => &[0],
        ZeroElim(_) => &[0],
        _ => &[],
    }
}

struct LetShape {
    rule: Rule,
    cart_binders: u32,
    slots: Vec<SlotId>,
}

fn let_shape(e: &Expr) -> Option<LetShape> {
    use Expr::*;
    match e {
        LLet { .. } => Some(LetShape { rule: Rule::NatL, cart_binders: 1, slots: vec![] }),
        TenLet { slots, .. } => Some(LetShape {
            rule: Rule::NatTensor,
            cart_binders: 0,
            slots: vec![slots.0, slots.1],
        }),
        SqLet { slot, .. } => {
            Some(LetShape { rule: Rule::NatSub, cart_binders: 1, slots: vec![*slot] })
        }
        UnitLet { .. } => Some(LetShape { rule: Rule::NatUnit, cart_binders: 0, slots: vec![] }),
        _ => None,
    }
}

fn let_parts(e: &Expr) -> (&Expr, &Expr) {
    use Expr::*;
    match e {
        LLet { scrut, body }
        | UnitLet { scrut, body }
        | TenLet { scrut, body, .. }
        | SqLet { scrut, body, .. } => (scrut, body),
        _ => unreachable!("let_parts on a non-let"),
    }
}

fn with_let_parts(e: &Expr, scrut: Expr, body: Expr) -> Expr {
    use Expr::*;
    match e {
        LLet { .. } => LLet { scrut: scrut.boxed(), body: body.boxed() },
        UnitLet { .. } => UnitLet { scrut: scrut.boxed(), body: body.boxed() },
        TenLet { slots, .. } => TenLet { scrut: scrut.boxed(), slots: *slots, body: body.boxed() },
        SqLet { slot, .. } => SqLet { scrut: scrut.boxed(), slot: *slot, body: body.boxed() },
        _ => unreachable!("with_let_parts on a non-let"),
    }
}

/// Does a hoist fire at the root of `e`? Returns the rule and the hole index.
pub fn match_hoist_root(e: &Expr) -> Option<(Rule, u32)> {
    for &hole in frame_holes(e) {
        let child = e.children()[hole as usize].0;
        let Some(shape) = let_shape(child) else { continue };
        // the let's bound slots must not occur in the frame's other children
        let clash = e.children().iter().enumerate().any(|(i, (c, _))| {
            i as u32 != hole && shape.slots.iter().any(|&s| linear_occurrences(c, s) > 0)
        });
        if clash {
            continue;
        }
        return Some((shape.rule, hole));
    }
    None
}

/// Hoist the let at `hole` over the frame `e`.
pub fn apply_hoist_root(e: &Expr, hole: u32) -> Option<Expr> {
    let inner = e.children()[hole as usize].0.clone();
    let shape = let_shape(&inner)?;
    let (scrut, body) = let_parts(&inner);
    // the frame with the hole filled by the let body, other children
    // shifted under the let's cartesian binders
    let mut frame = e.clone();
    for (i, (child, _)) in e.children().iter().enumerate() {
        if i as u32 == hole {
            continue;
        }
        let shifted = ops::shift(child, 0, shape.cart_binders as i64).ok()?;
        frame = replace_child(&frame, i as u32, shifted);
    }
    frame = replace_child(&frame, hole, body.clone());
    Some(with_let_parts(&inner, scrut.clone(), frame))
}

/// Preorder position of the first use of any of the given references in `e`:
/// the cartesian index `cart` (tracked under binders) or one of `slots`.
fn first_use(e: &Expr, cart: Option<u32>, slots: &[SlotId]) -> Option<usize> {
    fn scan(
        e: &Expr,
        depth: u32,
        cart: Option<u32>,
        slots: &[SlotId],
        counter: &mut usize,
    ) -> Option<usize> {
        let here = *counter;
        *counter += 1;
        match e {
            Expr::CartVar(i) if cart.map_or(false, |c| *i == c + depth) => return Some(here),
            Expr::LinVar(s) if slots.contains(s) => return Some(here),
            _ => {}
        }
        for (child, b) in e.children() {
            if let Some(pos) = scan(child, depth + b, cart, slots, counter) {
                return Some(pos);
            }
        }
        None
    }
    scan(e, 0, cart, slots, &mut 0)
}

/// Swap two adjacent independent lets when the inner one's binders are used
/// first. Returns the reordered term if a swap applies at the root.
pub fn apply_swap_root(e: &Expr) -> Option<Expr> {
    let outer_shape = let_shape(e)?;
    let (outer_scrut, outer_body) = let_parts(e);
    let inner = outer_body;
    let inner_shape = let_shape(inner)?;
    let (inner_scrut, inner_body) = let_parts(inner);

    // independence: the inner scrutinee must not mention the outer binders
    if outer_shape.cart_binders == 1 {
        let mut uses = false;
        count_cart_use(inner_scrut, 0, &mut uses);
        if uses {
            return None;
        }
    }
    if outer_shape.slots.iter().any(|&s| linear_occurrences(inner_scrut, s) > 0) {
        return None;
    }

    // keys: first use positions inside the innermost body
    let outer_cart = if outer_shape.cart_binders == 1 {
        Some(inner_shape.cart_binders) // outer binder index seen from inner body
    } else {
        None
    };
    let inner_cart = if inner_shape.cart_binders == 1 { Some(0) } else { None };
    let key_outer = first_use(inner_body, outer_cart, &outer_shape.slots).unwrap_or(usize::MAX);
    let key_inner = first_use(inner_body, inner_cart, &inner_shape.slots).unwrap_or(usize::MAX);
    if key_inner >= key_outer {
        return None;
    }

    // rebuild with the lets exchanged
    let new_inner_scrut = if outer_shape.cart_binders == 1 {
        ops::shift(inner_scrut, 0, -1).ok()?
    } else {
        inner_scrut.clone()
    };
    let new_outer_scrut = if inner_shape.cart_binders == 1 {
        ops::shift(outer_scrut, 0, 1).ok()?
    } else {
        outer_scrut.clone()
    };
    let new_body = if outer_shape.cart_binders == 1 && inner_shape.cart_binders == 1 {
        swap01(inner_body)?
    } else {
        inner_body.clone()
    };
    let new_inner = with_let_parts(e, new_outer_scrut, new_body);
    Some(with_let_parts(inner, new_inner_scrut, new_inner))
}

fn count_cart_use(e: &Expr, target: u32, found: &mut bool) {
    fn scan(e: &Expr, depth: u32, target: u32, found: &mut bool) {
        if *found {
            return;
        }
        if matches!(e, Expr::CartVar(i) if *i == target + depth) {
            *found = true;
            return;
        }
        for (child, b) in e.children() {
            scan(child, depth + b, target, found);
        }
    }
    scan(e, 0, target, found);
}

/// Exchange free indices 0 and 1.
fn swap01(e: &Expr) -> Option<Expr> {
    // 0 -> marker, 1 -> 0, marker -> 1, via two clean shifts and substs is
    // fiddly; do it with a direct traversal instead.
    fn go(e: &Expr, depth: u32) -> Expr {
        if let Expr::CartVar(i) = e {
            if *i == depth {
                return Expr::CartVar(depth + 1);
            } else if *i == depth + 1 {
                return Expr::CartVar(depth);
            }
            return e.clone();
        }
        let mut out = e.clone();
        for (idx, (child, b)) in e.children().iter().enumerate() {
            out = replace_child(&out, idx as u32, go(child, depth + b));
        }
        out
    }
    Some(go(e, 0))
}

/// Find the leftmost-outermost hoist or swap position.
pub fn find_hoist(e: &Expr) -> Option<(Rule, Path)> {
    fn go(e: &Expr, path: &mut Path) -> Option<(Rule, Path)> {
        if let Some((rule, _)) = match_hoist_root(e) {
            return Some((rule, path.clone()));
        }
        if apply_swap_root(e).is_some() {
            return Some((Rule::LetSwap, path.clone()));
        }
        for (idx, (child, _)) in e.children().iter().enumerate() {
            path.push(idx as u32);
            if let Some(found) = go(child, path) {
                return Some(found);
            }
            path.pop();
        }
        None
    }
    go(e, &mut Vec::new())
}

pub fn apply_hoist_rule(e: &Expr, rule: Rule) -> Option<Expr> {
    if rule == Rule::LetSwap {
        return apply_swap_root(e);
    }
    let (found, hole) = match_hoist_root(e)?;
    if found != rule {
        return None;
    }
    apply_hoist_root(e, hole)
}
