"""Generated closed forms for the order-4 and order-5 ambient scalars.

Universal expressions in the surface data (conformal factor jets E, omega,
Omega, Omega*, scriptH); symbol X_ab denotes the (a, b)-th partial
derivative of X in the surface coordinates at the evaluation point.
Generated symbolically from the ambient metric; do not edit by hand.
"""
import math  # noqa: F401

def grad_form_closed(E_00, E_01, E_10, O11_00, O11_01, O11_10, O12_00, O12_01, O12_10, S11_00, S12_00, cH_00, w1_00, w1_01, w2_00, w2_10):
    x0 = O11_00**2
    x1 = O12_00**2
    x2 = x0 + x1
    x3 = w1_00**2
    x4 = E_00**2
    x5 = 12*x2*x4
    x6 = x0*x5
    x7 = w2_00**2
    x8 = x1*x5
    x9 = E_00*O11_01
    x10 = E_01*O11_00 + E_10*O12_00
    x11 = x10 - x9
    x12 = 2*x2
    x13 = E_00*O11_10
    x14 = E_10*O11_00
    x15 = E_01*O12_00 + x13 - x14
    x16 = x3 + x7
    x17 = 4*O11_00
    x18 = E_00*x2
    x19 = w1_00*x18
    x20 = x17*x19
    x21 = w2_00*x18
    x22 = x17*x21
    x23 = 8*O12_00
    x24 = x19*x23
    x25 = x21*x23
    x26 = 2*E_00
    x27 = w2_00*x26
    x28 = E_01 + x27
    x29 = w1_00*x26
    x30 = -E_10 + x29
    x31 = O11_00*x30 + O12_00*x28 + x13
    x32 = E_10 + x29
    x33 = -E_01 + x27
    x34 = O11_00*x33 - O12_00*x32 + x9
    x35 = 12*O11_00
    x36 = O11_00*x28 - O12_00*x30 - O12_10*x26 + x10
    x37 = E_01*O12_00 - O11_00*x32 - O12_00*x33 - O12_01*x26 - x14
    x38 = O12_00*S12_00
    x39 = O11_00*S11_00 + x38
    x40 = O12_00*x26
    x41 = O12_00*x4
    x42 = cH_00*x41
    x43 = w1_01*x2
    x44 = w2_10*x2
    x45 = x42 + x43 - x44
    x46 = O11_00*x45 + x39*x40
    x47 = 4*x41
    x48 = O11_00*x26
    x49 = O12_00*x45
    x50 = x17*x4
    x51 = E_00*cH_00 + S11_00
    x52 = O11_00*x51 + x38
    x53 = x42 - x43 + x44
    x54 = O12_00*x53 + x48*x52
    x55 = -O11_00*x53 + x40*x52
    return (1/2)*(x11**2*x12 + x11*x22 + x11*x24 + x12*x15**2 + x12*x31**2 + x12*x34**2 - x15*x20 + x15*x25 + x16*x6 + x16*x8 - x19*x31*x35 + x2*x36**2 + x2*x37**2 - x20*x37 - x21*x34*x35 + x22*x36 + x24*x36 + x25*x37 + x3*x6 + x3*x8 - x46*x47 - x47*x55 - x47*(-S12_00*x2*x26 + x46 + x55) - x50*x54 - x50*(x39*x48 - x49) + x50*(E_00*x2*x51 - x54) - x50*(2*E_00*O11_00*x39 - S11_00*x18 - x49) + x6*x7 + x7*x8)/(E_00**5*x2)


def dlap_closed(E_00, E_01, E_02, E_10, E_20, O11_00, O11_01, O11_02, O11_10, O11_20, O12_00, O12_01, O12_02, O12_10, O12_20, S11_00, S12_00, cH_00, cH_01, cH_02, cH_10, cH_20, w1_00, w1_10, w2_00, w2_01):
    x0 = E_00**3
    x1 = O11_00**2 + O12_00**2
    x2 = x1**2
    x3 = E_00*cH_01
    x4 = 2*E_01
    x5 = x2*x4
    x6 = E_00*cH_10
    x7 = 2*E_10
    x8 = x2*x7
    x9 = E_00**2
    x10 = x2*x9
    x11 = 15*x10
    x12 = 3*cH_00
    x13 = w2_00*x12
    x14 = E_00*x2
    x15 = w1_00*x12
    x16 = E_00*cH_00
    x17 = 12*x16*x2
    x18 = w1_00**2 + w2_00**2
    x19 = 2*O12_00*S12_00
    x20 = O11_00*O11_01 + O12_00*O12_01
    x21 = cH_01*x1
    x22 = 2*cH_00
    x23 = 16*x9
    x24 = O11_00*O11_10 + O12_00*O12_10
    x25 = cH_10*x1
    x26 = E_01*x1
    x27 = 3*E_00
    x28 = E_10*x1
    x29 = w2_00*x21
    x30 = w1_00*x25
    x31 = x16*(O11_00*(2*S11_00 + x16) + x19)
    x32 = x1*x9
    x33 = 8*x9
    x34 = 2*E_00
    x35 = x20*x34 - x26
    x36 = E_00*E_02
    x37 = 4*E_00
    x38 = x20*x37
    x39 = 2*x9
    x40 = x39*(O11_00*O11_02 + O11_01**2 + O12_00*O12_02 + O12_01**2)
    x41 = E_01**2
    x42 = -E_01*x38 + x1*(-x36 + 2*x41) + x40
    x43 = x1*x36 + x35*x4 + x42
    x44 = 4*cH_00
    x45 = x24*x34 - x28
    x46 = E_00*E_20
    x47 = x24*x37
    x48 = x39*(O11_00*O11_20 + O11_10**2 + O12_00*O12_20 + O12_10**2)
    x49 = E_10**2
    x50 = -E_10*x47 + x1*(-x46 + 2*x49) + x48
    x51 = x1*x46 + x45*x7 + x50
    x52 = 4*x9
    x53 = 4*x1
    x54 = x1*x40
    x55 = 2*x35**2
    x56 = x35*x38
    x57 = x1*x42
    x58 = x1*x48
    x59 = 2*x45**2
    x60 = x45*x47
    x61 = x1*x50
    return (1/4)*(E_01*x14*(cH_01 - x13) + E_10*x14*(cH_10 - x15) + 12*cH_00*x0*x1*(O11_00*S11_00 + O11_00*(S11_00 + x16) + x19) + 9*cH_00*x10*x18 + cH_00*(x54 + x55 - x56 - x57) + cH_00*(x58 + x59 - x60 - x61) + cH_00*(2*x2*x41 - x54 - x55 + x56 + x57) + cH_00*(2*x2*x49 - x58 - x59 + x60 + x61) - cH_01*w2_00*x11 - cH_10*w1_00*x11 + x17*(-E_00*w1_10 + E_10*w1_00) + x17*(-E_00*w2_01 + E_01*w2_00) - x20*x23*(x20*x22 + x21) - x23*x24*(x22*x24 + x25) + x26*x27*(cH_01*x1 - x1*x13) + x27*x28*(cH_10*x1 - x1*x15) - x3*x5 + 6*x32*(6*cH_00*x1*x18 - 2*x29 - 2*x30 - 5*x31) + 3*x32*(-x1*x12*x18 + x29 + x30 + 2*x31) + x44*(-x1*x43 + x20**2*x33) + x44*(-x1*x51 + x24**2*x33) - x5*(E_01*cH_00 + x3) + x53*(cH_00*x43 + cH_01*x20*x52 + cH_02*x32) + x53*(cH_00*x51 + cH_10*x24*x52 + cH_20*x32) - x6*x8 - x8*(E_10*cH_00 + x6))/(x0*x2)
