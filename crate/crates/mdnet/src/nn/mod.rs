//! Minimal CPU layer library with hand-written backward passes.
//!
//! Tensors are `ndarray` arrays in NHWC layout (`[batch, height, width,
//! channels]`), which keeps the channel axis contiguous for pointwise
//! convolutions (a single GEMM) and depthwise kernels (vectorizable
//! inner loops). Layers cache what their backward pass needs when
//! `train == true`; inference through `&self` never mutates.
//!
//! Parallelism only ever splits work across independent output slices,
//! so results are bitwise deterministic regardless of thread schedule.

pub mod layers;

pub use layers::{BatchNorm, Conv2dBnRelu, DsConv, PwBias, PwBnRelu};

use ndarray::{ArrayD, NdFloat};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Scalar type the network is generic over. Training runs in `f32`;
/// gradient checks run the same code in `f64`.
pub trait Scalar: NdFloat + Send + Sync + 'static {}
impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for converting literals into the active scalar type.
#[inline]
pub fn fl<F: Scalar>(x: f64) -> F {
    F::from(x).expect("f64 converts to network scalar")
}

/// A trainable tensor together with its gradient accumulator.
///
/// Backward passes add into `grad`, so a parameter used at several
/// graph sites (shared heads) accumulates all contributions without
/// extra bookkeeping. `decay` marks whether weight decay applies;
/// batch-norm scale/shift and biases are excluded.
#[derive(Debug, Clone)]
pub struct Param<F: Scalar> {
    pub name: String,
    pub value: ArrayD<F>,
    pub grad: ArrayD<F>,
    pub decay: bool,
}

impl<F: Scalar> Param<F> {
    pub fn new(name: impl Into<String>, value: ArrayD<F>, decay: bool) -> Self {
        let grad = ArrayD::zeros(value.raw_dim());
        Self {
            name: name.into(),
            value,
            grad,
            decay,
        }
    }

    pub fn zero_grad(&mut self) {
        self.grad.fill(F::zero());
    }
}

/// Fan-in scaled normal initialization (He et al. style) from a seeded
/// stream, via Box-Muller so no distribution crate is needed.
pub fn he_normal<F: Scalar>(rng: &mut ChaCha8Rng, shape: &[usize], fan_in: usize) -> ArrayD<F> {
    let std = (2.0 / fan_in.max(1) as f64).sqrt();
    let n: usize = shape.iter().product();
    let mut data = Vec::with_capacity(n);
    while data.len() < n {
        let u1: f64 = rng.random_range(f64::EPSILON..1.0);
        let u2: f64 = rng.random_range(0.0..1.0);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        data.push(fl::<F>(r * theta.cos() * std));
        if data.len() < n {
            data.push(fl::<F>(r * theta.sin() * std));
        }
    }
    ArrayD::from_shape_vec(shape.to_vec(), data).expect("shape matches length")
}

/// Visitor plumbing implemented by every layer and composite.
pub trait Module<F: Scalar> {
    /// Visit trainable parameters in a stable construction order.
    fn visit_params(&self, f: &mut dyn FnMut(&Param<F>));
    fn visit_params_mut(&mut self, f: &mut dyn FnMut(&mut Param<F>));
    /// Visit non-trainable state tensors (batch-norm running stats).
    fn visit_state(&self, f: &mut dyn FnMut(&str, &ArrayD<F>)) {
        let _ = f;
    }
    fn visit_state_mut(&mut self, f: &mut dyn FnMut(&str, &mut ArrayD<F>)) {
        let _ = f;
    }

    fn zero_grad(&mut self) {
        self.visit_params_mut(&mut |p| p.zero_grad());
    }
}

/// Number of trainable scalars under a module.
pub fn param_count<F: Scalar>(m: &impl Module<F>) -> usize {
    let mut n = 0;
    m.visit_params(&mut |p| n += p.value.len());
    n
}
