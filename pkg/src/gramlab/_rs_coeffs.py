"""Chebyshev tables for the Riemann-Siegel remainder terms C0..C4.

Generated by tools/gen_rs_coeffs.py; do not edit by hand.
Series variable is x = 2*p - 1 with p = frac(sqrt(t / 2pi)).
"""

C0 = (
    0.642667286239768378,
    0.0,
    0.271972999997855067,
    0.0,
    0.0107386058193402842,
    0.0,
    -0.00137438152963366144,
    0.0,
    -0.000124682218803206772,
    0.0,
    -5.76459970678304804e-7,
    0.0,
    2.72806742958045223e-7,
    0.0,
    8.07795305950047062e-9,
    0.0,
    -2.08846080688696545e-10,
    0.0,
    -1.31155618547395271e-11,
    0.0,
    -1.42079872280871852e-14,
    0.0,
    1.02717013579311616e-14,
    0.0,
    1.39745988195183744e-16,
    0.0,
    -4.48411873395228833e-18,
)

C1 = (
    0.0,
    0.0106979139210030008,
    0.0,
    0.0171706512433778838,
    0.0,
    0.00279321114978847109,
    0.0,
    -0.0000363756537192750424,
    0.0,
    -0.0000271089552311508870,
    0.0,
    -1.04837498667527734e-6,
    0.0,
    5.88646716652757185e-8,
    0.0,
    4.32296726850277905e-9,
    0.0,
    -1.13695915882737117e-11,
    0.0,
    -6.69983391035532748e-12,
    0.0,
    -1.00799976528084749e-13,
    0.0,
    5.15248800922211630e-15,
    0.0,
    1.52169544718369710e-16,
    0.0,
    -1.86194648336871010e-18,
)

C2 = (
    0.00314611585398891226,
    0.0,
    -0.00230878388453075012,
    0.0,
    0.0000576982076668984402,
    0.0,
    0.000352388620236659007,
    0.0,
    0.0000252466674586844345,
    0.0,
    -3.44282119719313588e-6,
    0.0,
    -3.53507455662245888e-7,
    0.0,
    3.73083018379262539e-9,
    0.0,
    1.27769518641166353e-9,
    0.0,
    2.18746162041470578e-11,
    0.0,
    -1.91414109646103704e-12,
    0.0,
    -6.56288310216852269e-14,
    0.0,
    1.25860091824117156e-15,
    0.0,
    8.14007662388146267e-17,
)

C3 = (
    0.0,
    0.0000712325622120387319,
    0.0,
    0.000232343052981648085,
    0.0,
    -0.000129299120454724748,
    0.0,
    0.0000180744964136714393,
    0.0,
    6.52618518722043950e-6,
    0.0,
    -1.16963653785219863e-7,
    0.0,
    -7.34947612651812586e-8,
    0.0,
    -1.77509100779070715e-9,
    0.0,
    2.55555296132652514e-10,
    0.0,
    1.13766366005372993e-11,
    0.0,
    -3.34986389853027689e-13,
    0.0,
    -2.55373793541638918e-14,
    0.0,
    6.76650077132187078e-17,
    0.0,
    2.97688847199197282e-17,
)

C4 = (
    0.000167657452466968596,
    0.0,
    -0.000227287689434167258,
    0.0,
    0.0000647738718844569604,
    0.0,
    -8.49220050012540905e-6,
    0.0,
    -2.61614072452190766e-6,
    0.0,
    8.33676496873321452e-7,
    0.0,
    6.32470403754483262e-8,
    0.0,
    -1.00599494030010716e-8,
    0.0,
    -7.82267720413033305e-10,
    0.0,
    3.16765828534986035e-11,
    0.0,
    3.50069447020528950e-12,
    0.0,
    -1.43148145114437495e-14,
    0.0,
    -7.26940270792176348e-15,
    0.0,
    -8.78055659483595677e-17,
    0.0,
    8.15025447495457956e-18,
)

