/// Operator impls for every owned/borrowed combination, forwarding to
/// `add_in_place`, `sub_in_place`, `mul_ref` and `neg_ref`.
#[macro_export]
#[doc(hidden)]
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl $t {
            fn add_ref(&self, o: &$t) -> $t {
                let mut out = self.clone();
                out.add_in_place(o);
                out
            }
            fn sub_ref(&self, o: &$t) -> $t {
                let mut out = self.clone();
                out.sub_in_place(o);
                out
            }
        }
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                self.add_ref(o)
            }
        }
        impl std::ops::Add<$t> for $t {
            type Output = $t;
            fn add(mut self, o: $t) -> $t {
                self.add_in_place(&o);
                self
            }
        }
        impl std::ops::Add<&$t> for $t {
            type Output = $t;
            fn add(mut self, o: &$t) -> $t {
                self.add_in_place(o);
                self
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                self.sub_ref(o)
            }
        }
        impl std::ops::Sub<$t> for $t {
            type Output = $t;
            fn sub(mut self, o: $t) -> $t {
                self.sub_in_place(&o);
                self
            }
        }
        impl std::ops::Sub<&$t> for $t {
            type Output = $t;
            fn sub(mut self, o: &$t) -> $t {
                self.sub_in_place(o);
                self
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                self.mul_ref(o)
            }
        }
        impl std::ops::Mul<$t> for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                self.mul_ref(&o)
            }
        }
        impl std::ops::Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                self.mul_ref(o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl std::ops::AddAssign<&$t> for $t {
            fn add_assign(&mut self, o: &$t) {
                self.add_in_place(o);
            }
        }
        impl std::ops::AddAssign<$t> for $t {
            fn add_assign(&mut self, o: $t) {
                self.add_in_place(&o);
            }
        }
        impl std::ops::SubAssign<&$t> for $t {
            fn sub_assign(&mut self, o: &$t) {
                self.sub_in_place(o);
            }
        }
        impl std::ops::SubAssign<$t> for $t {
            fn sub_assign(&mut self, o: $t) {
                self.sub_in_place(&o);
            }
        }
        impl std::ops::MulAssign<&$t> for $t {
            fn mul_assign(&mut self, o: &$t) {
                *self = self.mul_ref(o);
            }
        }
    };
}
