//! Axis-aligned box types and overlap math shared by anchors, losses,
//! postprocessing and evaluation.

use serde::{Deserialize, Serialize};

/// Axis-aligned box in corner form. Coordinates are pixels unless the
/// surrounding code states otherwise; `x1 <= x2` and `y1 <= y2`.
///
/// Corner form keeps intersection/union math trivial; center form is
/// derived on demand where offset encoding needs it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxXYXY {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

impl BoxXYXY {
    pub fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        debug_assert!(x1 <= x2 && y1 <= y2, "corner order violated");
        Self { x1, y1, x2, y2 }
    }

    /// Build from center + size form.
    pub fn from_cxcywh(cx: f64, cy: f64, w: f64, h: f64) -> Self {
        Self::new(cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0)
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> (f64, f64) {
        ((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)
    }

    /// (cx, cy, w, h) form used by the anchor offset transform.
    pub fn cxcywh(&self) -> (f64, f64, f64, f64) {
        let (cx, cy) = self.center();
        (cx, cy, self.width(), self.height())
    }

    pub fn diagonal_sq(&self) -> f64 {
        self.width() * self.width() + self.height() * self.height()
    }

    /// Clamp the box to `[0, w] x [0, h]`.
    pub fn clip(&self, w: f64, h: f64) -> Self {
        let x1 = self.x1.clamp(0.0, w);
        let y1 = self.y1.clamp(0.0, h);
        let x2 = self.x2.clamp(x1, w);
        let y2 = self.y2.clamp(y1, h);
        Self { x1, y1, x2, y2 }
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        Self::new(self.x1 + dx, self.y1 + dy, self.x2 + dx, self.y2 + dy)
    }

    pub fn is_valid(&self) -> bool {
        self.x1.is_finite()
            && self.y1.is_finite()
            && self.x2.is_finite()
            && self.y2.is_finite()
            && self.x1 <= self.x2
            && self.y1 <= self.y2
    }
}

/// A ground-truth annotation: a box plus its dense class index in
/// `[0, K-1]` where `K` is the number of foreground classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledBox {
    pub box_: BoxXYXY,
    pub class_id: usize,
}

impl LabeledBox {
    pub fn new(box_: BoxXYXY, class_id: usize) -> Self {
        Self { box_, class_id }
    }
}

/// Intersection area of two boxes (0 when disjoint).
pub fn intersection_area(a: &BoxXYXY, b: &BoxXYXY) -> f64 {
    let iw = (a.x2.min(b.x2) - a.x1.max(b.x1)).max(0.0);
    let ih = (a.y2.min(b.y2) - a.y1.max(b.y1)).max(0.0);
    iw * ih
}

/// Intersection over union. Degenerate pairs with zero union area
/// return 0 instead of erroring so annotation noise cannot crash
/// training.
pub fn iou(a: &BoxXYXY, b: &BoxXYXY) -> f64 {
    let inter = intersection_area(a, b);
    let union = a.area() + b.area() - inter;
    if union <= 0.0 {
        0.0
    } else {
        inter / union
    }
}

/// Squared diagonal length of the smallest axis-aligned box enclosing
/// both inputs.
pub fn enclosing_diagonal_sq(a: &BoxXYXY, b: &BoxXYXY) -> f64 {
    let w = a.x2.max(b.x2) - a.x1.min(b.x1);
    let h = a.y2.max(b.y2) - a.y1.min(b.y1);
    w * w + h * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn iou_identity() {
        let a = BoxXYXY::new(0.0, 0.0, 4.0, 4.0);
        assert_eq!(iou(&a, &a), 1.0);
    }

    #[test]
    fn iou_disjoint() {
        let a = BoxXYXY::new(0.0, 0.0, 1.0, 1.0);
        let b = BoxXYXY::new(5.0, 5.0, 6.0, 6.0);
        assert_eq!(iou(&a, &b), 0.0);
    }

    #[test]
    fn iou_partial_overlap() {
        // intersection 1, union 4 + 4 - 1 = 7
        let a = BoxXYXY::new(0.0, 0.0, 2.0, 2.0);
        let b = BoxXYXY::new(1.0, 1.0, 3.0, 3.0);
        assert_relative_eq!(iou(&a, &b), 1.0 / 7.0, max_relative = 1e-12);
    }

    #[test]
    fn iou_degenerate_pair_is_zero() {
        let a = BoxXYXY::new(1.0, 1.0, 1.0, 1.0);
        let b = BoxXYXY::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(iou(&a, &b), 0.0);
    }

    #[test]
    fn enclosing_diagonal_cases() {
        let unit = BoxXYXY::new(0.0, 0.0, 1.0, 1.0);
        assert_relative_eq!(enclosing_diagonal_sq(&unit, &unit), 2.0);

        let far = BoxXYXY::new(3.0, 0.0, 4.0, 1.0);
        // enclosing box (0,0,4,1): 16 + 1
        assert_relative_eq!(enclosing_diagonal_sq(&unit, &far), 17.0);

        let a = BoxXYXY::new(0.0, 0.0, 2.0, 2.0);
        let b = BoxXYXY::new(1.0, 1.0, 3.0, 3.0);
        // enclosing box (0,0,3,3): 9 + 9
        assert_relative_eq!(enclosing_diagonal_sq(&a, &b), 18.0);
    }

    fn arb_box() -> impl Strategy<Value = BoxXYXY> {
        (
            -100.0f64..100.0,
            -100.0f64..100.0,
            0.01f64..50.0,
            0.01f64..50.0,
        )
            .prop_map(|(x, y, w, h)| BoxXYXY::new(x, y, x + w, y + h))
    }

    proptest! {
        #[test]
        fn iou_symmetric(a in arb_box(), b in arb_box()) {
            prop_assert_eq!(iou(&a, &b), iou(&b, &a));
        }

        #[test]
        fn iou_bounded_and_self_unit(a in arb_box(), b in arb_box()) {
            let v = iou(&a, &b);
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert_eq!(iou(&a, &a), 1.0);
        }

        #[test]
        fn enclosing_dominates_diagonals(a in arb_box(), b in arb_box()) {
            let c2 = enclosing_diagonal_sq(&a, &b);
            prop_assert!(c2 >= a.diagonal_sq() - 1e-12);
            prop_assert!(c2 >= b.diagonal_sq() - 1e-12);
        }

        #[test]
        fn translation_invariance(a in arb_box(), b in arb_box(),
                                  dx in -50.0f64..50.0, dy in -50.0f64..50.0) {
            let (ta, tb) = (a.translate(dx, dy), b.translate(dx, dy));
            prop_assert!((iou(&a, &b) - iou(&ta, &tb)).abs() < 1e-9);
            prop_assert!((enclosing_diagonal_sq(&a, &b) - enclosing_diagonal_sq(&ta, &tb)).abs() < 1e-6);
        }
    }
}
