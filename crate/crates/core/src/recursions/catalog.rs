use std::sync::OnceLock;

use super::recipe::{Affine, Branch, Factor, KRange, Recipe, Var};
use super::{Direction, Form, Hypothesis, IdentityDescriptor};
use crate::params::ParamName::{self, *};
use crate::series::FunctionKind::{self, *};

const K: Affine = Affine::new(1, 0, 0);
const NEG_K: Affine = Affine::new(-1, 0, 0);
const K2: Affine = Affine::new(0, 1, 0);
const KK: Affine = Affine::new(1, 1, 0);
const ONE: Affine = Affine::constant(1);
const TWO_MINUS_K: Affine = Affine::new(-1, 0, 2);
const ONE_MINUS_K: Affine = Affine::new(-1, 0, 1);

const ANCHOR_G_SUM: &str = "2F1 telescoping recursion in A";
const ANCHOR_G_BINOM: &str = "2F1 binomial recursion in A";
const ANCHOR_G_SWAP: &str = "2F1 recursions in B, by exchanging A and B";
const ANCHOR_F1: &str = "F1 telescoping recursion in A";
const ANCHOR_F1_MULTINOM: &str = "F1 multinomial recursion in A";
const ANCHOR_F1_B: &str = "F1 recursions in B and B′";
const ANCHOR_F2: &str = "F2 recursions";
const ANCHOR_F3: &str = "F3 recursions in A and A′";
const ANCHOR_F3_SWAP: &str = "F3 recursions in B and B′, by exchanging A, A′ with B, B′";
const ANCHOR_F4: &str = "F4 recursions";
const ANCHOR_F4_SWAP: &str = "F4 recursions in B, by exchanging A and B";

fn p(n: ParamName) -> Factor {
    Factor::Param(n)
}

fn inv(n: ParamName) -> Factor {
    Factor::Inverse(n)
}

fn sinv(n: ParamName, a: Affine) -> Factor {
    Factor::ShiftedInverse(n, a)
}

fn poch(n: ParamName, a: Affine) -> Factor {
    Factor::Poch(n, a)
}

fn pinv(n: ParamName, a: Affine) -> Factor {
    Factor::PochInv(n, a)
}

fn commute(pairs: &[(ParamName, ParamName)]) -> Vec<Hypothesis> {
    pairs.iter().map(|&(a, b)| Hypothesis::Commute(a, b)).collect()
}

fn branch(var: Var, left: Vec<Factor>, shifts: Vec<(ParamName, Affine)>, right: Vec<Factor>) -> Branch {
    Branch {
        var,
        left,
        shifts,
        right,
    }
}

/// `(C−kI)⁻¹(C−(k−1)I)⁻¹` used by the c-shift sums.
fn c_pair(n: ParamName) -> Vec<Factor> {
    vec![sinv(n, NEG_K), sinv(n, ONE_MINUS_K)]
}

/// `C⁻¹(C−I)⁻¹` used by the single-step c-contiguous relations,
/// written in the index of the telescoping form (k = 1).
fn c_pair_contig(n: ParamName) -> Vec<Factor> {
    vec![sinv(n, ONE_MINUS_K), sinv(n, NEG_K)]
}

struct Builder {
    out: Vec<IdentityDescriptor>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: &'static str,
        kind: FunctionKind,
        shifted: ParamName,
        direction: Direction,
        form: Form,
        mut hypotheses: Vec<Hypothesis>,
        anchor: &'static str,
        recipe: Recipe,
    ) {
        hypotheses.push(Hypothesis::ShiftsInvertible {
            name: shifted,
            direction,
        });
        self.out.push(IdentityDescriptor {
            id,
            kind,
            shifted_parameter: shifted,
            direction,
            form,
            hypotheses,
            anchor,
            recipe,
        });
    }

    /// Telescoping pair in the parameter `shifted`: increment sums over
    /// `1..=s` with `+`, decrement sums over `0..s` with `−`; the shifted
    /// parameter moves by `±k` inside each branch.
    #[allow(clippy::too_many_arguments)]
    fn telescoping_pair(
        &mut self,
        ids: [&'static str; 2],
        kind: FunctionKind,
        shifted: ParamName,
        form: Form,
        hyps: &[Hypothesis],
        anchors: [&'static str; 2],
        branches: &[Branch],
    ) {
        for (i, direction) in [Direction::Increment, Direction::Decrement].into_iter().enumerate() {
            let (range, sign, offset) = match direction {
                Direction::Increment => (KRange::OneToS, 1, K),
                Direction::Decrement => (KRange::ZeroToSMinusOne, -1, NEG_K),
            };
            let branches = branches
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.shifts.insert(0, (shifted, offset));
                    b
                })
                .collect();
            self.push(
                ids[i],
                kind,
                shifted,
                direction,
                form,
                hyps.to_vec(),
                anchors[i],
                Recipe::Telescoping { range, sign, branches },
            );
        }
    }

    /// Binomial or multinomial pair. `inc_shifts` and `dec_shifts` are the
    /// stated argument shifts of the increment and decrement forms.
    #[allow(clippy::too_many_arguments)]
    fn multinomial_pair(
        &mut self,
        ids: [&'static str; 2],
        kind: FunctionKind,
        shifted: ParamName,
        form: Form,
        vars: (bool, bool),
        hyps: &[Hypothesis],
        anchor: &'static str,
        left: Vec<Factor>,
        inc_shifts: Vec<(ParamName, Affine)>,
        dec_shifts: Vec<(ParamName, Affine)>,
        right: Vec<Factor>,
    ) {
        for (i, (direction, shifts)) in [(Direction::Increment, inc_shifts), (Direction::Decrement, dec_shifts)]
            .into_iter()
            .enumerate()
        {
            let sign = if direction == Direction::Increment { 1 } else { -1 };
            self.push(
                ids[i],
                kind,
                shifted,
                direction,
                form,
                hyps.to_vec(),
                anchor,
                Recipe::Multinomial {
                    x_active: vars.0,
                    y_active: vars.1,
                    sign,
                    left: left.clone(),
                    shifts,
                    right: right.clone(),
                },
            );
        }
    }

    /// Single-sum c-shift recursion (`KRange::OneToS`, `+`).
    #[allow(clippy::too_many_arguments)]
    fn c_shift(
        &mut self,
        id: &'static str,
        kind: FunctionKind,
        shifted: ParamName,
        form: Form,
        hyps: &[Hypothesis],
        anchor: &'static str,
        branches: Vec<Branch>,
    ) {
        self.push(
            id,
            kind,
            shifted,
            Direction::Decrement,
            form,
            hyps.to_vec(),
            anchor,
            Recipe::Telescoping {
                range: KRange::OneToS,
                sign: 1,
                branches,
            },
        );
    }

    /// An identity obtained from `base` by exchanging parameters.
    ///
    /// The base hypotheses are transposed; `cross` lists the commutations
    /// that make the function itself invariant under the exchange.
    fn swapped(
        &mut self,
        id: &'static str,
        base: &'static str,
        pairs: &[(ParamName, ParamName)],
        cross: &[(ParamName, ParamName)],
        anchor: &'static str,
    ) {
        let b = self
            .out
            .iter()
            .find(|d| d.id == base)
            .expect("base precedes swap")
            .clone();
        let swap = |n: ParamName| {
            pairs
                .iter()
                .find_map(|&(a, c)| {
                    if n == a {
                        Some(c)
                    } else if n == c {
                        Some(a)
                    } else {
                        None
                    }
                })
                .unwrap_or(n)
        };
        let mut hypotheses: Vec<Hypothesis> = Vec::new();
        for h in b.hypotheses.iter().chain(commute(cross).iter()) {
            let h = match *h {
                Hypothesis::Commute(a, c) => Hypothesis::Commute(swap(a), swap(c)),
                Hypothesis::ShiftsInvertible { name, direction } => Hypothesis::ShiftsInvertible {
                    name: swap(name),
                    direction,
                },
            };
            if !hypotheses.iter().any(|e| e.same_as(&h)) {
                hypotheses.push(h);
            }
        }
        self.out.push(IdentityDescriptor {
            id,
            kind: b.kind,
            shifted_parameter: swap(b.shifted_parameter),
            direction: b.direction,
            form: b.form,
            hypotheses,
            anchor,
            recipe: Recipe::Swapped {
                base,
                pairs: pairs.to_vec(),
            },
        });
    }
}

/// Every catalogued identity, in a fixed order.
pub fn catalog() -> &'static [IdentityDescriptor] {
    static CATALOG: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

fn build() -> Vec<IdentityDescriptor> {
    use Form::*;
    let mut b = Builder { out: Vec::new() };

    // Gauss
    let g_a = commute(&[(B, C)]);
    let g_a_branch = [branch(Var::X, vec![], vec![(B, ONE), (C, ONE)], vec![p(B), inv(C)])];
    b.telescoping_pair(
        ["G-A+1-contig", "G-A−1-contig"],
        Gauss2F1,
        A,
        ContiguousSingleStep,
        &g_a,
        [
            "2F1 contiguous relation, A raised",
            "2F1 contiguous relation, A lowered",
        ],
        &g_a_branch,
    );
    b.telescoping_pair(
        ["G-A+s-sum", "G-A−s-sum"],
        Gauss2F1,
        A,
        TelescopingSum,
        &g_a,
        [ANCHOR_G_SUM; 2],
        &g_a_branch,
    );
    b.multinomial_pair(
        ["G-A+s-binom", "G-A−s-binom"],
        Gauss2F1,
        A,
        BinomialSum,
        (true, false),
        &g_a,
        ANCHOR_G_BINOM,
        vec![],
        vec![(A, K), (B, K), (C, K)],
        vec![(B, K), (C, K)],
        vec![poch(B, K), pinv(C, K)],
    );
    for (id, base) in [
        ("G-B+s-sum", "G-A+s-sum"),
        ("G-B−s-sum", "G-A−s-sum"),
        ("G-B+s-binom", "G-A+s-binom"),
        ("G-B−s-binom", "G-A−s-binom"),
    ] {
        b.swapped(id, base, &[(A, B)], &[(A, B)], ANCHOR_G_SWAP);
    }
    let g_c = commute(&[(B, C)]);
    b.c_shift(
        "G-C−1-contig",
        Gauss2F1,
        C,
        ContiguousSingleStep,
        &g_c,
        "2F1 contiguous relation, C lowered",
        vec![branch(
            Var::X,
            vec![p(A)],
            vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
            [vec![p(B)], c_pair_contig(C)].concat(),
        )],
    );
    b.c_shift(
        "G-C−s-sum",
        Gauss2F1,
        C,
        CShift,
        &g_c,
        "2F1 recursion in C",
        vec![branch(
            Var::X,
            vec![p(A)],
            vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
            [vec![p(B)], c_pair(C)].concat(),
        )],
    );

    // Appell F1
    let f1_a = commute(&[(A, B), (BPrime, C)]);
    let f1_a_branches = [
        branch(Var::X, vec![p(B)], vec![(B, ONE), (C, ONE)], vec![inv(C)]),
        branch(Var::Y, vec![], vec![(BPrime, ONE), (C, ONE)], vec![p(BPrime), inv(C)]),
    ];
    b.telescoping_pair(
        ["F1-A+1-contig", "F1-A−1-contig"],
        AppellF1,
        A,
        ContiguousSingleStep,
        &f1_a,
        ["F1 contiguous relation, A raised", "F1 contiguous relation, A lowered"],
        &f1_a_branches,
    );
    b.telescoping_pair(
        ["F1-A+s-sum", "F1-A−s-sum"],
        AppellF1,
        A,
        TelescopingSum,
        &f1_a,
        [ANCHOR_F1; 2],
        &f1_a_branches,
    );
    b.multinomial_pair(
        ["F1-A+s-multinom", "F1-A−s-multinom"],
        AppellF1,
        A,
        MultinomialSum,
        (true, true),
        &f1_a,
        ANCHOR_F1_MULTINOM,
        vec![poch(B, K)],
        vec![(A, KK), (B, K), (BPrime, K2), (C, KK)],
        vec![(B, K), (BPrime, K2), (C, KK)],
        vec![poch(BPrime, K2), pinv(C, KK)],
    );
    b.telescoping_pair(
        ["F1-B+s-sum", "F1-B−s-sum"],
        AppellF1,
        B,
        TelescopingSum,
        &[],
        [ANCHOR_F1_B; 2],
        &[branch(Var::X, vec![p(A)], vec![(A, ONE), (C, ONE)], vec![inv(C)])],
    );
    b.telescoping_pair(
        ["F1-B′+s-sum", "F1-B′−s-sum"],
        AppellF1,
        BPrime,
        TelescopingSum,
        &[],
        [ANCHOR_F1_B; 2],
        &[branch(Var::Y, vec![p(A)], vec![(A, ONE), (C, ONE)], vec![inv(C)])],
    );
    b.multinomial_pair(
        ["F1-B+s-binom", "F1-B−s-binom"],
        AppellF1,
        B,
        BinomialSum,
        (true, false),
        &[],
        ANCHOR_F1_B,
        vec![poch(A, K)],
        vec![(A, K), (B, K), (C, K)],
        vec![(A, K), (C, K)],
        vec![pinv(C, K)],
    );
    b.multinomial_pair(
        ["F1-B′+s-binom", "F1-B′−s-binom"],
        AppellF1,
        BPrime,
        BinomialSum,
        (false, true),
        &[],
        ANCHOR_F1_B,
        vec![poch(A, K2)],
        vec![(A, K2), (BPrime, K2), (C, K2)],
        vec![(A, K2), (C, K2)],
        vec![pinv(C, K2)],
    );
    let f1_c_x = |pair: Vec<Factor>| {
        branch(
            Var::X,
            vec![p(A), p(B)],
            vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
            pair,
        )
    };
    let f1_c_y = |pair: Vec<Factor>| {
        branch(
            Var::Y,
            vec![p(A)],
            vec![(A, ONE), (BPrime, ONE), (C, TWO_MINUS_K)],
            [vec![p(BPrime)], pair].concat(),
        )
    };
    b.c_shift(
        "F1-C−1-contig",
        AppellF1,
        C,
        ContiguousSingleStep,
        &f1_a,
        "F1 contiguous relation, C lowered",
        vec![f1_c_x(c_pair_contig(C)), f1_c_y(c_pair_contig(C))],
    );
    b.c_shift(
        "F1-C−s-sum",
        AppellF1,
        C,
        CShift,
        &f1_a,
        "F1 recursion in C",
        vec![f1_c_x(c_pair(C)), f1_c_y(c_pair(C))],
    );

    // Appell F2
    let f2_a = commute(&[(A, B), (BPrime, C), (BPrime, CPrime), (C, CPrime)]);
    b.telescoping_pair(
        ["F2-A+s-sum", "F2-A−s-sum"],
        AppellF2,
        A,
        TelescopingSum,
        &f2_a,
        [ANCHOR_F2; 2],
        &[
            branch(Var::X, vec![p(B)], vec![(B, ONE), (C, ONE)], vec![inv(C)]),
            branch(
                Var::Y,
                vec![],
                vec![(BPrime, ONE), (CPrime, ONE)],
                vec![p(BPrime), inv(CPrime)],
            ),
        ],
    );
    b.multinomial_pair(
        ["F2-A+s-multinom", "F2-A−s-multinom"],
        AppellF2,
        A,
        MultinomialSum,
        (true, true),
        &f2_a,
        ANCHOR_F2,
        vec![poch(B, K)],
        vec![(A, KK), (B, K), (BPrime, K2), (C, K), (CPrime, K2)],
        vec![(B, K), (BPrime, K2), (C, K), (CPrime, K2)],
        vec![poch(BPrime, K2), pinv(C, K), pinv(CPrime, K2)],
    );
    let f2_b = commute(&[(C, CPrime)]);
    b.telescoping_pair(
        ["F2-B+s-sum", "F2-B−s-sum"],
        AppellF2,
        B,
        TelescopingSum,
        &f2_b,
        [ANCHOR_F2; 2],
        &[branch(Var::X, vec![p(A)], vec![(A, ONE), (C, ONE)], vec![inv(C)])],
    );
    b.telescoping_pair(
        ["F2-B′+s-sum", "F2-B′−s-sum"],
        AppellF2,
        BPrime,
        TelescopingSum,
        &f2_b,
        [ANCHOR_F2; 2],
        &[branch(
            Var::Y,
            vec![p(A)],
            vec![(A, ONE), (CPrime, ONE)],
            vec![inv(CPrime)],
        )],
    );
    b.multinomial_pair(
        ["F2-B+s-binom", "F2-B−s-binom"],
        AppellF2,
        B,
        BinomialSum,
        (true, false),
        &f2_b,
        ANCHOR_F2,
        vec![poch(A, K)],
        vec![(A, K), (B, K), (C, K)],
        vec![(A, K), (C, K)],
        vec![pinv(C, K)],
    );
    b.multinomial_pair(
        ["F2-B′+s-binom", "F2-B′−s-binom"],
        AppellF2,
        BPrime,
        BinomialSum,
        (false, true),
        &f2_b,
        ANCHOR_F2,
        vec![poch(A, K2)],
        vec![(A, K2), (BPrime, K2), (CPrime, K2)],
        vec![(A, K2), (CPrime, K2)],
        vec![pinv(CPrime, K2)],
    );
    b.c_shift(
        "F2-C−s-sum",
        AppellF2,
        C,
        CShift,
        &f2_a,
        ANCHOR_F2,
        vec![branch(
            Var::X,
            vec![p(A), p(B)],
            vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
            c_pair(C),
        )],
    );
    b.c_shift(
        "F2-C′−s-sum",
        AppellF2,
        CPrime,
        CShift,
        &f2_a,
        ANCHOR_F2,
        vec![branch(
            Var::Y,
            vec![p(A)],
            vec![(A, ONE), (BPrime, ONE), (CPrime, TWO_MINUS_K)],
            [c_pair(CPrime), vec![p(BPrime)]].concat(),
        )],
    );

    // Appell F3
    let f3_a = commute(&[(A, APrime), (A, B), (APrime, B), (BPrime, C)]);
    b.telescoping_pair(
        ["F3-A+s-sum", "F3-A−s-sum"],
        AppellF3,
        A,
        TelescopingSum,
        &f3_a,
        [ANCHOR_F3; 2],
        &[branch(Var::X, vec![p(B)], vec![(B, ONE), (C, ONE)], vec![inv(C)])],
    );
    b.telescoping_pair(
        ["F3-A′+s-sum", "F3-A′−s-sum"],
        AppellF3,
        APrime,
        TelescopingSum,
        &f3_a,
        [ANCHOR_F3; 2],
        &[branch(
            Var::Y,
            vec![],
            vec![(BPrime, ONE), (C, ONE)],
            vec![p(BPrime), inv(C)],
        )],
    );
    b.multinomial_pair(
        ["F3-A+s-binom", "F3-A−s-binom"],
        AppellF3,
        A,
        BinomialSum,
        (true, false),
        &f3_a,
        ANCHOR_F3,
        vec![poch(B, K)],
        vec![(A, K), (B, K), (C, K)],
        vec![(B, K), (C, K)],
        vec![pinv(C, K)],
    );
    b.multinomial_pair(
        ["F3-A′+s-binom", "F3-A′−s-binom"],
        AppellF3,
        APrime,
        BinomialSum,
        (false, true),
        &f3_a,
        ANCHOR_F3,
        vec![],
        vec![(APrime, K2), (BPrime, K2), (C, K2)],
        vec![(BPrime, K2), (C, K2)],
        vec![poch(BPrime, K2), pinv(C, K2)],
    );
    b.c_shift(
        "F3-C−s-sum",
        AppellF3,
        C,
        CShift,
        &f3_a,
        "F3 recursion in C",
        vec![
            branch(
                Var::X,
                vec![p(A), p(B)],
                vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
                c_pair(C),
            ),
            branch(
                Var::Y,
                vec![p(APrime)],
                vec![(APrime, ONE), (BPrime, ONE), (C, TWO_MINUS_K)],
                [c_pair(C), vec![p(BPrime)]].concat(),
            ),
        ],
    );
    let f3_pairs = [(A, B), (APrime, BPrime)];
    let f3_cross = [(A, B), (A, BPrime), (APrime, B), (APrime, BPrime)];
    for (id, base) in [
        ("F3-B+s-sum", "F3-A+s-sum"),
        ("F3-B−s-sum", "F3-A−s-sum"),
        ("F3-B′+s-sum", "F3-A′+s-sum"),
        ("F3-B′−s-sum", "F3-A′−s-sum"),
        ("F3-B+s-binom", "F3-A+s-binom"),
        ("F3-B−s-binom", "F3-A−s-binom"),
        ("F3-B′+s-binom", "F3-A′+s-binom"),
        ("F3-B′−s-binom", "F3-A′−s-binom"),
    ] {
        b.swapped(id, base, &f3_pairs, &f3_cross, ANCHOR_F3_SWAP);
    }

    // Appell F4
    let f4 = commute(&[(A, B), (C, CPrime)]);
    b.telescoping_pair(
        ["F4-A+s-sum", "F4-A−s-sum"],
        AppellF4,
        A,
        TelescopingSum,
        &f4,
        [ANCHOR_F4; 2],
        &[
            branch(Var::X, vec![p(B)], vec![(B, ONE), (C, ONE)], vec![inv(C)]),
            branch(Var::Y, vec![p(B)], vec![(B, ONE), (CPrime, ONE)], vec![inv(CPrime)]),
        ],
    );
    b.multinomial_pair(
        ["F4-A+s-multinom", "F4-A−s-multinom"],
        AppellF4,
        A,
        MultinomialSum,
        (true, true),
        &f4,
        ANCHOR_F4,
        vec![poch(B, KK)],
        vec![(A, KK), (B, KK), (C, K), (CPrime, K2)],
        vec![(B, KK), (C, K), (CPrime, K2)],
        vec![pinv(C, K), pinv(CPrime, K2)],
    );
    b.c_shift(
        "F4-C−s-sum",
        AppellF4,
        C,
        CShift,
        &f4,
        ANCHOR_F4,
        vec![branch(
            Var::X,
            vec![p(A), p(B)],
            vec![(A, ONE), (B, ONE), (C, TWO_MINUS_K)],
            c_pair(C),
        )],
    );
    b.c_shift(
        "F4-C′−s-sum",
        AppellF4,
        CPrime,
        CShift,
        &f4,
        ANCHOR_F4,
        vec![branch(
            Var::Y,
            vec![p(A), p(B)],
            vec![(A, ONE), (B, ONE), (CPrime, TWO_MINUS_K)],
            c_pair(CPrime),
        )],
    );
    for (id, base) in [
        ("F4-B+s-sum", "F4-A+s-sum"),
        ("F4-B−s-sum", "F4-A−s-sum"),
        ("F4-B+s-multinom", "F4-A+s-multinom"),
        ("F4-B−s-multinom", "F4-A−s-multinom"),
    ] {
        b.swapped(id, base, &[(A, B)], &[(A, B)], ANCHOR_F4_SWAP);
    }

    b.out
}
