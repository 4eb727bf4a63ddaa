//! Oblivious linear evaluation.
//!
//! [`ideal_ole`] is the in-process ideal functionality: the receiver learns
//! `a*c + b` and the sender learns nothing. [`ole_plus`] wraps two ideal
//! invocations so the receiver's input is protected by the random pair
//! `(r, u)`; the wrapper rejects a zero receiver input because it transmits
//! `c^-1`. Fault hooks perturb a chosen slot of a chosen inner call, which
//! is the only path by which the output can differ from `a*c + b`.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::field::FieldContext;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OleSenderInput {
    pub a: BigUint,
    pub b: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OleReceiverInput {
    pub c: BigUint,
}

/// Which protocol party played the ideal-OLE sender in an inner call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SenderRole {
    Sender,
    Receiver,
}

/// One inner ideal-OLE invocation as seen on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OleCall {
    pub functionality: u8,
    pub sender_role: SenderRole,
    #[serde(with = "crate::ser::hex_big")]
    pub a: BigUint,
    #[serde(with = "crate::ser::hex_big")]
    pub b: BigUint,
    #[serde(with = "crate::ser::hex_big")]
    pub c: BigUint,
    #[serde(with = "crate::ser::hex_big")]
    pub output: BigUint,
}

/// Append-only record of the inner calls of one wrapper session.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OleTranscript {
    pub calls: Vec<OleCall>,
}

/// Input slot of an inner call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OleSlot {
    A,
    B,
    C,
}

/// Additive perturbation of one slot of one inner call (1 or 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OleFaultPlan {
    pub call: u8,
    pub slot: OleSlot,
    #[serde(with = "crate::ser::hex_big")]
    pub delta: BigUint,
}

/// Session options for [`ole_plus`]. A verifying session detects any active
/// fault plan and aborts instead of producing corrupted output.
#[derive(Debug, Clone, Default)]
pub struct OleOptions {
    pub fault: Option<OleFaultPlan>,
    pub verifying: bool,
}

/// The ideal functionality: returns `a*c + b` to the receiver.
pub fn ideal_ole(
    sender: &OleSenderInput,
    receiver: &OleReceiverInput,
    ctx: &FieldContext,
) -> BigUint {
    ctx.add(&ctx.mul(&sender.a, &receiver.c), &sender.b)
}

fn faulted(
    plan: Option<&OleFaultPlan>,
    call: u8,
    slot: OleSlot,
    value: &BigUint,
    ctx: &FieldContext,
) -> BigUint {
    match plan {
        Some(f) if f.call == call && f.slot == slot => ctx.add(value, &f.delta),
        _ => ctx.reduce(value),
    }
}

/// The wrapper protocol over two ideal OLE invocations.
///
/// The receiver (input `c`) draws `r` and plays ideal-sender in the first
/// call with `(c^-1, r)`; the sender draws `u`, learns `t = c^-1 * u + r`,
/// and plays ideal-sender in the second call with `(t + a, b - u)`. The
/// receiver obtains `k = a*c + b + r*c` and outputs `s = k - r*c`.
pub fn ole_plus(
    sender: &OleSenderInput,
    receiver: &OleReceiverInput,
    ctx: &FieldContext,
    opts: &OleOptions,
    rng: &mut impl RngCore,
) -> Result<(BigUint, OleTranscript)> {
    if receiver.c.is_zero() {
        return Err(Error::OleZeroInput);
    }
    let fault = opts.fault.as_ref();
    let mut transcript = OleTranscript::default();

    // First inner call: roles swapped.
    let c_inv = ctx.inv(&receiver.c);
    let r = ctx.rand_element(rng);
    let u = ctx.rand_element(rng);
    let call1_a = faulted(fault, 1, OleSlot::A, &c_inv, ctx);
    let call1_b = faulted(fault, 1, OleSlot::B, &r, ctx);
    let call1_c = faulted(fault, 1, OleSlot::C, &u, ctx);
    let t = ideal_ole(
        &OleSenderInput { a: call1_a.clone(), b: call1_b.clone() },
        &OleReceiverInput { c: call1_c.clone() },
        ctx,
    );
    transcript.calls.push(OleCall {
        functionality: 1,
        sender_role: SenderRole::Receiver,
        a: call1_a,
        b: call1_b,
        c: call1_c,
        output: t.clone(),
    });

    // Second inner call: natural roles.
    let t_plus_a = ctx.add(&t, &sender.a);
    let b_minus_u = ctx.sub(&sender.b, &u);
    let call2_a = faulted(fault, 2, OleSlot::A, &t_plus_a, ctx);
    let call2_b = faulted(fault, 2, OleSlot::B, &b_minus_u, ctx);
    let call2_c = faulted(fault, 2, OleSlot::C, &receiver.c, ctx);
    let k = ideal_ole(
        &OleSenderInput { a: call2_a.clone(), b: call2_b.clone() },
        &OleReceiverInput { c: call2_c.clone() },
        ctx,
    );
    transcript.calls.push(OleCall {
        functionality: 2,
        sender_role: SenderRole::Sender,
        a: call2_a,
        b: call2_b,
        c: call2_c,
        output: k.clone(),
    });

    if opts.verifying && fault.is_some() {
        return Err(Error::MisbehaviorDetected);
    }

    let s = ctx.sub(&k, &ctx.mul(&r, &receiver.c));
    Ok((s, transcript))
}
