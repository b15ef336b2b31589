//! Open book decompositions as monodromy factorizations, stabilization
//! moves, surgery-induced monodromy updates, and knots marked on pages.

use crate::error::{Error, Result};
use crate::surface::{identity_i64, mat_mul_i64, CurveClass, Sign, SignedTwist, Surface};

/// An open book: a page surface and an ordered word of signed Dehn twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBook {
    page: Surface,
    monodromy: Vec<SignedTwist>,
}

impl OpenBook {
    pub fn new(page: Surface, monodromy: Vec<SignedTwist>) -> Result<OpenBook> {
        if page.is_closed() {
            return Err(Error::ClosedSurface);
        }
        for twist in &monodromy {
            if twist.curve().surface() != page {
                return Err(Error::SurfaceMismatch);
            }
        }
        Ok(OpenBook { page, monodromy })
    }

    pub fn trivial(page: Surface) -> Result<OpenBook> {
        OpenBook::new(page, vec![])
    }

    pub fn page(&self) -> Surface {
        self.page
    }

    pub fn monodromy(&self) -> &[SignedTwist] {
        &self.monodromy
    }

    pub fn binding_components(&self) -> u32 {
        self.page.boundary_count()
    }

    /// The action of the monodromy word on first homology, as a product of
    /// transvection matrices; the last factor of the word acts first.
    pub fn abelianized_monodromy(&self) -> Vec<Vec<i64>> {
        let mut m = identity_i64(self.page.h1_rank());
        for twist in &self.monodromy {
            m = mat_mul_i64(&m, &twist.matrix());
        }
        m
    }

    fn extended_word(&self, ext: &crate::surface::PageExtension) -> Vec<SignedTwist> {
        self.monodromy
            .iter()
            .map(|t| t.extend(ext).expect("twists live on the page"))
            .collect()
    }

    /// Plumb a Hopf band onto one boundary circle: the page gains a handle
    /// and a twist of the given sign about the new basis vector is appended.
    pub fn stabilize(&self, sign: Sign) -> OpenBook {
        let (page, ext) = self
            .page
            .add_page_handle()
            .expect("open book pages have boundary");
        let mut monodromy = self.extended_word(&ext);
        monodromy.push(SignedTwist::new(
            page.basis_class(ext.new_indices()[0]),
            sign,
        ));
        OpenBook { page, monodromy }
    }

    /// Stabilization joining the last two boundary circles, used to make the
    /// binding connected; the twist runs once through the new handle.
    pub fn stabilize_connecting(&self, sign: Sign) -> Result<OpenBook> {
        let (page, ext) = self.page.add_connecting_handle()?;
        let mut monodromy = self.extended_word(&ext);
        monodromy.push(SignedTwist::new(
            page.basis_class(ext.new_indices()[0]),
            sign,
        ));
        Ok(OpenBook { page, monodromy })
    }

    /// Monodromy update for a contact surgery on a curve sitting on a page:
    /// contact `+1` surgery appends a left twist, contact `-1` a right one.
    pub fn page_surgery(&self, curve: &CurveClass, contact_coefficient: Sign) -> Result<OpenBook> {
        if curve.surface() != self.page {
            return Err(Error::SurfaceMismatch);
        }
        let mut monodromy = self.monodromy.clone();
        monodromy.push(SignedTwist::new(
            curve.clone(),
            contact_coefficient.flipped(),
        ));
        Ok(OpenBook {
            page: self.page,
            monodromy,
        })
    }

    pub fn validate_knot(&self, knot: &MarkedKnot) -> Result<()> {
        if knot.curve.surface() != self.page {
            return Err(Error::SurfaceMismatch);
        }
        if knot.page_index > self.monodromy.len() {
            return Err(Error::InvalidInput(format!(
                "page index {} exceeds word length {}",
                knot.page_index,
                self.monodromy.len()
            )));
        }
        Ok(())
    }

    /// Stabilize twice positively and push the marked knot over both new
    /// page handles.  The rotation number changes by `2 * sign`, the page
    /// framing of the knot is unchanged, and the knot class gains the first
    /// new basis vector plus `sign` times the second.
    pub fn stabilize_knot_double(
        &self,
        knot: &MarkedKnot,
        sign: Sign,
    ) -> Result<(OpenBook, MarkedKnot)> {
        self.validate_knot(knot)?;
        let (mid_page, first) = self.page.add_page_handle()?;
        let (page, second) = mid_page.add_page_handle()?;

        let mut monodromy: Vec<SignedTwist> = self
            .monodromy
            .iter()
            .map(|t| {
                t.extend(&first)
                    .and_then(|t| t.extend(&second))
                    .expect("twists live on the page")
            })
            .collect();
        let e1 = first.new_indices()[0];
        let e2 = second.new_indices()[0];
        monodromy.push(SignedTwist::positive(page.basis_class(e1)));
        monodromy.push(SignedTwist::positive(page.basis_class(e2)));

        let curve = knot
            .curve
            .extend(&first)?
            .extend(&second)?
            .add(&page.basis_class(e1))?
            .add(&page.basis_class(e2).scaled(sign.as_i64()))?;
        let pushed = MarkedKnot {
            curve,
            rotation: knot.rotation + 2 * sign.as_i64(),
            page_index: knot.page_index,
        };
        Ok((OpenBook { page, monodromy }, pushed))
    }
}

/// A knot sitting on one page of an open book, with its rotation number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedKnot {
    curve: CurveClass,
    rotation: i64,
    page_index: usize,
}

impl MarkedKnot {
    pub fn new(curve: CurveClass, rotation: i64, page_index: usize) -> MarkedKnot {
        MarkedKnot {
            curve,
            rotation,
            page_index,
        }
    }

    pub fn curve(&self) -> &CurveClass {
        &self.curve
    }

    pub fn rotation(&self) -> i64 {
        self.rotation
    }

    pub fn page_index(&self) -> usize {
        self.page_index
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SeifertForm;

    #[test]
    fn empty_word_acts_as_identity() {
        let ob = OpenBook::trivial(Surface::new(2, 1)).unwrap();
        assert_eq!(ob.abelianized_monodromy(), identity_i64(4));
    }

    #[test]
    fn single_twist_matches_transvection_matrix() {
        let page = Surface::new(1, 1);
        let twist = SignedTwist::positive(page.basis_class(0));
        let ob = OpenBook::new(page, vec![twist.clone()]).unwrap();
        assert_eq!(ob.abelianized_monodromy(), twist.matrix());
    }

    #[test]
    fn twist_and_inverse_cancel() {
        let page = Surface::new(1, 2);
        let c = page.curve(vec![1, 1, 0]).unwrap();
        let word = vec![SignedTwist::positive(c.clone()), SignedTwist::negative(c)];
        let ob = OpenBook::new(page, word).unwrap();
        assert_eq!(ob.abelianized_monodromy(), identity_i64(3));
    }

    #[test]
    fn monodromy_preserves_the_intersection_form() {
        let page = Surface::new(2, 2);
        let word = vec![
            SignedTwist::positive(page.curve(vec![1, 0, 2, -1, 1]).unwrap()),
            SignedTwist::negative(page.curve(vec![0, 1, 1, 1, 0]).unwrap()),
            SignedTwist::positive(page.curve(vec![1, 1, 0, 0, 3]).unwrap()),
        ];
        let ob = OpenBook::new(page, word).unwrap();
        let m = ob.abelianized_monodromy();
        let j = page.intersection_form();
        let mt: Vec<Vec<i64>> = (0..m.len())
            .map(|i| (0..m.len()).map(|k| m[k][i]).collect())
            .collect();
        assert_eq!(mat_mul_i64(&mat_mul_i64(&mt, &j), &m), j);
    }

    #[test]
    fn stabilizing_the_disk_book_gives_an_annulus_book() {
        let s3 = OpenBook::trivial(Surface::disk()).unwrap();
        let stabilized = s3.stabilize(Sign::Positive);
        assert_eq!(stabilized.page(), Surface::annulus());
        assert_eq!(stabilized.monodromy().len(), 1);
        assert_eq!(stabilized.monodromy()[0].sign(), Sign::Positive);
        assert_eq!(stabilized.monodromy()[0].curve().coeffs(), &[1]);
    }

    #[test]
    fn stabilization_grows_rank_and_word_by_one() {
        let ob = OpenBook::new(
            Surface::new(1, 1),
            vec![SignedTwist::negative(Surface::new(1, 1).basis_class(1))],
        )
        .unwrap();
        for sign in [Sign::Positive, Sign::Negative] {
            let st = ob.stabilize(sign);
            assert_eq!(st.page().h1_rank(), ob.page().h1_rank() + 1);
            assert_eq!(st.monodromy().len(), ob.monodromy().len() + 1);
        }
    }

    #[test]
    fn stabilization_fixes_the_old_block_of_the_monodromy() {
        let page = Surface::new(1, 1);
        let word = vec![
            SignedTwist::positive(page.basis_class(0)),
            SignedTwist::negative(page.curve(vec![1, 1]).unwrap()),
        ];
        let ob = OpenBook::new(page, word).unwrap();
        let before = ob.abelianized_monodromy();
        let after = ob.stabilize(Sign::Negative).abelianized_monodromy();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(after[i][j], before[i][j]);
            }
        }
    }

    #[test]
    fn page_surgery_sign_convention() {
        let page = Surface::new(1, 1);
        let ob = OpenBook::trivial(page).unwrap();
        let c = page.basis_class(0);
        // contact -1 surgery appends a right twist
        let after = ob.page_surgery(&c, Sign::Negative).unwrap();
        assert_eq!(after.monodromy()[0].sign(), Sign::Positive);
        // contact +1 then contact -1 on the same class acts trivially
        let round = after.page_surgery(&c, Sign::Positive).unwrap();
        assert_eq!(round.abelianized_monodromy(), identity_i64(2));
    }

    #[test]
    fn surgery_on_the_zero_class_is_invisible() {
        let page = Surface::new(1, 1);
        let ob = OpenBook::trivial(page).unwrap();
        let after = ob.page_surgery(&page.zero_class(), Sign::Negative).unwrap();
        assert_eq!(after.abelianized_monodromy(), identity_i64(2));
    }

    #[test]
    fn knot_double_stabilization_bookkeeping() {
        let page = Surface::new(1, 1);
        let ob = OpenBook::trivial(page).unwrap();
        let knot = MarkedKnot::new(page.curve(vec![1, 1]).unwrap(), 0, 0);

        let (up, pushed) = ob.stabilize_knot_double(&knot, Sign::Positive).unwrap();
        assert_eq!(pushed.rotation(), 2);
        assert_eq!(up.monodromy().len(), 2);
        assert_eq!(up.page().h1_rank(), 4);
        assert_eq!(pushed.curve().coeffs(), &[1, 1, 1, 1]);

        // page framing under the extended default form is unchanged
        let before = SeifertForm::default_for(page)
            .framing(knot.curve())
            .unwrap();
        let after = SeifertForm::default_for(up.page())
            .framing(pushed.curve())
            .unwrap();
        assert_eq!(before, after);

        // a negative push returns the rotation to its original value
        let (_, down) = up.stabilize_knot_double(&pushed, Sign::Negative).unwrap();
        assert_eq!(down.rotation(), knot.rotation());
    }

    #[test]
    fn knots_are_validated_against_the_book() {
        let page = Surface::new(1, 1);
        let ob = OpenBook::trivial(page).unwrap();
        let misplaced = MarkedKnot::new(Surface::annulus().basis_class(0), 0, 0);
        assert_eq!(
            ob.stabilize_knot_double(&misplaced, Sign::Positive),
            Err(Error::SurfaceMismatch)
        );
        let deep = MarkedKnot::new(page.basis_class(0), 0, 5);
        assert!(ob.stabilize_knot_double(&deep, Sign::Positive).is_err());
    }
}
