//! Symmetric quadrature rules in barycentric coordinates.

/// Quadrature point: barycentric coordinates and a weight normalised to the
/// reference simplex measure (1/6 for the tetrahedron, 1/2 for the triangle).
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint<const N: usize> {
    pub bary: [f64; N],
    pub weight: f64,
}

const TET_A1: f64 = 0.092_735_250_310_891_226_402_323_91;
const TET_A2: f64 = 0.310_885_919_263_300_609_797_345_7;
const TET_B: f64 = 0.454_496_295_874_350_350_508_119_5;
const TET_W1: f64 = 0.012_248_840_519_393_658_257_285_03;
const TET_W2: f64 = 0.018_781_320_953_002_641_799_864_28;
const TET_W3: f64 = 0.007_091_003_462_846_911_073_011_571;

/// 14-point rule with positive weights, exact for polynomials of degree 5.
pub fn tet_rule() -> [QuadPoint<4>; 14] {
    let mut pts = [QuadPoint { bary: [0.0; 4], weight: 0.0 }; 14];
    let mut n = 0;
    for (a, w) in [(TET_A1, TET_W1), (TET_A2, TET_W2)] {
        for k in 0..4 {
            let mut bary = [a; 4];
            bary[k] = 1.0 - 3.0 * a;
            pts[n] = QuadPoint { bary, weight: w };
            n += 1;
        }
    }
    let c = 0.5 - TET_B;
    for [i, j] in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
        let mut bary = [c; 4];
        bary[i] = TET_B;
        bary[j] = TET_B;
        pts[n] = QuadPoint { bary, weight: TET_W3 };
        n += 1;
    }
    pts
}

const TRI_A: f64 = 0.445_948_490_915_964_886_318_329_3;
const TRI_B: f64 = 0.091_576_213_509_770_743_459_571_46;
const TRI_WA: f64 = 0.111_690_794_839_005_732_847_503_5;
const TRI_WB: f64 = 0.054_975_871_827_660_933_819_163_16;

/// 6-point rule exact for polynomials of degree 4.
pub fn triangle_rule() -> [QuadPoint<3>; 6] {
    let mut pts = [QuadPoint { bary: [0.0; 3], weight: 0.0 }; 6];
    let mut n = 0;
    for (a, w) in [(TRI_A, TRI_WA), (TRI_B, TRI_WB)] {
        for k in 0..3 {
            let mut bary = [a; 3];
            bary[k] = 1.0 - 2.0 * a;
            pts[n] = QuadPoint { bary, weight: w };
            n += 1;
        }
    }
    pts
}
