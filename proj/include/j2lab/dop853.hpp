#pragma once

// Dormand-Prince 8(5,3) with 7th-order dense output, generic over the scalar
// type so the same stepper runs in double and in double-double. Coefficients
// are parsed from decimal text to keep every digit the wider type can hold.
//
// Error control follows Hairer's DOP853: a 5th-order estimate blended with a
// 3rd-order one, err = |h| err5 / sqrt(n (err5 + 0.01 err3)), and the step
// factor is clamped to [0.333, 6] around 0.9 err^(-1/8).

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>

#include "j2lab/double_double.hpp"
#include "j2lab/errors.hpp"

namespace j2lab {

template <class S>
struct Dop853Tableau {
  S c2, c3, c4, c5, c6, c7, c8, c9;
  S c10, c11, c14, c15, c16, a21, a31, a32;
  S a41, a43, a51, a53, a54, a61, a64, a65;
  S a71, a74, a75, a76, a81, a84, a85, a86;
  S a87, a91, a94, a95, a96, a97, a98, a101;
  S a104, a105, a106, a107, a108, a109, a111, a114;
  S a115, a116, a117, a118, a119, a1110, a121, a124;
  S a125, a126, a127, a128, a129, a1210, a1211, a141;
  S a147, a148, a149, a1410, a1411, a1412, a1413, a151;
  S a156, a157, a158, a1511, a1512, a1513, a1514, a161;
  S a166, a167, a168, a169, a1613, a1614, a1615, b1;
  S b6, b7, b8, b9, b10, b11, b12, e31;
  S e32, e33, e51, e56, e57, e58, e59, e510;
  S e511, e512, d41, d46, d47, d48, d49, d410;
  S d411, d412, d413, d414, d415, d416, d51, d56;
  S d57, d58, d59, d510, d511, d512, d513, d514;
  S d515, d516, d61, d66, d67, d68, d69, d610;
  S d611, d612, d613, d614, d615, d616, d71, d76;
  S d77, d78, d79, d710, d711, d712, d713, d714;
  S d715, d716;

  static const Dop853Tableau& get() {
    static const Dop853Tableau table = make();
    return table;
  }

 private:
  static Dop853Tableau make() {
    auto k = [](const char* text) { return scalar_from_string<S>(text); };
    Dop853Tableau t;
    t.c2 = k("0.526001519587677318785587544488e-01");
    t.c3 = k("0.789002279381515978178381316732e-01");
    t.c4 = k("0.118350341907227396726757197510e+00");
    t.c5 = k("0.281649658092772603273242802490e+00");
    t.c6 = k("0.333333333333333333333333333333e+00");
    t.c7 = k("0.25e+00");
    t.c8 = k("0.307692307692307692307692307692e+00");
    t.c9 = k("0.651282051282051282051282051282e+00");
    t.c10 = k("0.6e+00");
    t.c11 = k("0.857142857142857142857142857142e+00");
    t.c14 = k("0.1e+00");
    t.c15 = k("0.2e+00");
    t.c16 = k("0.777777777777777777777777777778e+00");
    t.a21 = k("5.26001519587677318785587544488e-2");
    t.a31 = k("1.97250569845378994544595329183e-2");
    t.a32 = k("5.91751709536136983633785987549e-2");
    t.a41 = k("2.95875854768068491816892993775e-2");
    t.a43 = k("8.87627564304205475450678981324e-2");
    t.a51 = k("2.41365134159266685502369798665e-1");
    t.a53 = k("-8.84549479328286085344864962717e-1");
    t.a54 = k("9.24834003261792003115737966543e-1");
    t.a61 = k("3.7037037037037037037037037037e-2");
    t.a64 = k("1.70828608729473871279604482173e-1");
    t.a65 = k("1.25467687566822425016691814123e-1");
    t.a71 = k("3.7109375e-2");
    t.a74 = k("1.70252211019544039314978060272e-1");
    t.a75 = k("6.02165389804559606850219397283e-2");
    t.a76 = k("-1.7578125e-2");
    t.a81 = k("3.70920001185047927108779319836e-2");
    t.a84 = k("1.70383925712239993810214054705e-1");
    t.a85 = k("1.07262030446373284651809199168e-1");
    t.a86 = k("-1.53194377486244017527936158236e-2");
    t.a87 = k("8.27378916381402288758473766002e-3");
    t.a91 = k("6.24110958716075717114429577812e-1");
    t.a94 = k("-3.36089262944694129406857109825e0");
    t.a95 = k("-8.68219346841726006818189891453e-1");
    t.a96 = k("2.75920996994467083049415600797e1");
    t.a97 = k("2.01540675504778934086186788979e1");
    t.a98 = k("-4.34898841810699588477366255144e1");
    t.a101 = k("4.77662536438264365890433908527e-1");
    t.a104 = k("-2.48811461997166764192642586468e0");
    t.a105 = k("-5.90290826836842996371446475743e-1");
    t.a106 = k("2.12300514481811942347288949897e1");
    t.a107 = k("1.52792336328824235832596922938e1");
    t.a108 = k("-3.32882109689848629194453265587e1");
    t.a109 = k("-2.03312017085086261358222928593e-2");
    t.a111 = k("-9.3714243008598732571704021658e-1");
    t.a114 = k("5.18637242884406370830023853209e0");
    t.a115 = k("1.09143734899672957818500254654e0");
    t.a116 = k("-8.14978701074692612513997267357e0");
    t.a117 = k("-1.85200656599969598641566180701e1");
    t.a118 = k("2.27394870993505042818970056734e1");
    t.a119 = k("2.49360555267965238987089396762e0");
    t.a1110 = k("-3.0467644718982195003823669022e0");
    t.a121 = k("2.27331014751653820792359768449e0");
    t.a124 = k("-1.05344954667372501984066689879e1");
    t.a125 = k("-2.00087205822486249909675718444e0");
    t.a126 = k("-1.79589318631187989172765950534e1");
    t.a127 = k("2.79488845294199600508499808837e1");
    t.a128 = k("-2.85899827713502369474065508674e0");
    t.a129 = k("-8.87285693353062954433549289258e0");
    t.a1210 = k("1.23605671757943030647266201528e1");
    t.a1211 = k("6.43392746015763530355970484046e-1");
    t.a141 = k("5.61675022830479523392909219681e-2");
    t.a147 = k("2.53500210216624811088794765333e-1");
    t.a148 = k("-2.46239037470802489917441475441e-1");
    t.a149 = k("-1.24191423263816360469010140626e-1");
    t.a1410 = k("1.5329179827876569731206322685e-1");
    t.a1411 = k("8.20105229563468988491666602057e-3");
    t.a1412 = k("7.56789766054569976138603589584e-3");
    t.a1413 = k("-8.298e-3");
    t.a151 = k("3.18346481635021405060768473261e-2");
    t.a156 = k("2.83009096723667755288322961402e-2");
    t.a157 = k("5.35419883074385676223797384372e-2");
    t.a158 = k("-5.49237485713909884646569340306e-2");
    t.a1511 = k("-1.08347328697249322858509316994e-4");
    t.a1512 = k("3.82571090835658412954920192323e-4");
    t.a1513 = k("-3.40465008687404560802977114492e-4");
    t.a1514 = k("1.41312443674632500278074618366e-1");
    t.a161 = k("-4.28896301583791923408573538692e-1");
    t.a166 = k("-4.69762141536116384314449447206e0");
    t.a167 = k("7.68342119606259904184240953878e0");
    t.a168 = k("4.06898981839711007970213554331e0");
    t.a169 = k("3.56727187455281109270669543021e-1");
    t.a1613 = k("-1.39902416515901462129418009734e-3");
    t.a1614 = k("2.9475147891527723389556272149e0");
    t.a1615 = k("-9.15095847217987001081870187138e0");
    t.b1 = k("5.42937341165687622380535766363e-2");
    t.b6 = k("4.45031289275240888144113950566e0");
    t.b7 = k("1.89151789931450038304281599044e0");
    t.b8 = k("-5.8012039600105847814672114227e0");
    t.b9 = k("3.1116436695781989440891606237e-1");
    t.b10 = k("-1.52160949662516078556178806805e-1");
    t.b11 = k("2.01365400804030348374776537501e-1");
    t.b12 = k("4.47106157277725905176885569043e-2");
    t.e31 = k("0.244094488188976377952755905512e+00");
    t.e32 = k("0.733846688281611857341361741547e+00");
    t.e33 = k("0.220588235294117647058823529412e-01");
    t.e51 = k("0.1312004499419488073250102996e-01");
    t.e56 = k("-0.1225156446376204440720569753e+01");
    t.e57 = k("-0.4957589496572501915214079952e+00");
    t.e58 = k("0.1664377182454986536961530415e+01");
    t.e59 = k("-0.3503288487499736816886487290e+00");
    t.e510 = k("0.3341791187130174790297318841e+00");
    t.e511 = k("0.8192320648511571246570742613e-01");
    t.e512 = k("-0.2235530786388629525884427845e-01");
    t.d41 = k("-0.84289382761090128651353491142e+01");
    t.d46 = k("0.56671495351937776962531783590e+00");
    t.d47 = k("-0.30689499459498916912797304727e+01");
    t.d48 = k("0.23846676565120698287728149680e+01");
    t.d49 = k("0.21170345824450282767155149946e+01");
    t.d410 = k("-0.87139158377797299206789907490e+00");
    t.d411 = k("0.22404374302607882758541771650e+01");
    t.d412 = k("0.63157877876946881815570249290e+00");
    t.d413 = k("-0.88990336451333310820698117400e-01");
    t.d414 = k("0.18148505520854727256656404962e+02");
    t.d415 = k("-0.91946323924783554000451984436e+01");
    t.d416 = k("-0.44360363875948939664310572000e+01");
    t.d51 = k("0.10427508642579134603413151009e+02");
    t.d56 = k("0.24228349177525818288430175319e+03");
    t.d57 = k("0.16520045171727028198505394887e+03");
    t.d58 = k("-0.37454675472269020279518312152e+03");
    t.d59 = k("-0.22113666853125306036270938578e+02");
    t.d510 = k("0.77334326684722638389603898808e+01");
    t.d511 = k("-0.30674084731089398182061213626e+02");
    t.d512 = k("-0.93321305264302278729567221706e+01");
    t.d513 = k("0.15697238121770843886131091075e+02");
    t.d514 = k("-0.31139403219565177677282850411e+02");
    t.d515 = k("-0.93529243588444783865713862664e+01");
    t.d516 = k("0.35816841486394083752465898540e+02");
    t.d61 = k("0.19985053242002433820987653617e+02");
    t.d66 = k("-0.38703730874935176555105901742e+03");
    t.d67 = k("-0.18917813819516756882830838328e+03");
    t.d68 = k("0.52780815920542364900561016686e+03");
    t.d69 = k("-0.11573902539959630126141871134e+02");
    t.d610 = k("0.68812326946963000169666922661e+01");
    t.d611 = k("-0.10006050966910838403183860980e+01");
    t.d612 = k("0.77771377980534432092869265740e+00");
    t.d613 = k("-0.27782057523535084065932004339e+01");
    t.d614 = k("-0.60196695231264120758267380846e+02");
    t.d615 = k("0.84320405506677161018159903784e+02");
    t.d616 = k("0.11992291136182789328035130030e+02");
    t.d71 = k("-0.25693933462703749003312586129e+02");
    t.d76 = k("-0.15418974869023643374053993627e+03");
    t.d77 = k("-0.23152937917604549567536039109e+03");
    t.d78 = k("0.35763911791061412378285349910e+03");
    t.d79 = k("0.93405324183624310003907691704e+02");
    t.d710 = k("-0.37458323136451633156875139351e+02");
    t.d711 = k("0.10409964950896230045147246184e+03");
    t.d712 = k("0.29840293426660503123344363579e+02");
    t.d713 = k("-0.43533456590011143754432175058e+02");
    t.d714 = k("0.96324553959188282948394950600e+02");
    t.d715 = k("-0.39177261675615439165231486172e+02");
    t.d716 = k("-0.14972683625798562581422125276e+03");
    return t;
  }
};

template <class S, int N>
struct DenseSegment {
  using State = Eigen::Matrix<S, N, 1>;
  S t0;
  S h;
  std::array<State, 8> r;

  // Value and s-derivative of
  //   r1 + s (r2 + s1 (r3 + s (r4 + s1 (r5 + s (r6 + s1 (r7 + s r8)))))),  s1 = 1 - s.
  State evaluate(const S& s, State* d_ds = nullptr) const {
    const S s1 = S(1.0) - s;
    State acc = r[7];
    State dacc = State::Zero();
    for (int k = 6; k >= 0; --k) {
      // r[k+1] opens a group multiplied by s when k+1 is odd (0-based), by s1 otherwise.
      const bool by_s = ((k + 1) % 2) == 1;
      const S m = by_s ? s : s1;
      const double dm = by_s ? 1.0 : -1.0;
      State next = r[k] + acc * m;
      dacc = acc * S(dm) + dacc * m;
      acc = next;
    }
    if (d_ds) *d_ds = dacc;
    return acc;
  }
};

struct StepperStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

template <class S, int N>
class Dop853 {
 public:
  using State = Eigen::Matrix<S, N, 1>;
  using Segment = DenseSegment<S, N>;

  Dop853(double rtol, double atol) : rtol_(rtol), atol_(atol) {}

  // Integrates y' = f(t, y) from t0 to t_end (t_end > t0), calling on_step
  // with the dense segment of every accepted step.
  template <class Rhs, class OnStep>
  State integrate(Rhs&& f, S t, State y, const S& t_end, OnStep&& on_step) {
    const Dop853Tableau<S>& c = Dop853Tableau<S>::get();
    State k1 = f(t, y), k2, k3, k4, k5, k6, k7, k8, k9, k10, yw, knew;
    ++stats_.evaluations;
    double h = initial_step(y, k1);
    const double span = to_double(t_end - t);
    h = std::min(h, span);
    bool last_rejected = false;

    while (to_double(t_end - t) > 0.0) {
      if (h < 1e-14 * std::max(1.0, std::abs(to_double(t)))) throw IntegrationError("DOP853: step size underflow");
      const double remaining = to_double(t_end - t);
      bool final_step = false;
      if (h >= remaining) {
        h = remaining;
        final_step = true;
      }
      const S H = final_step ? S(t_end - t) : S(h);

      yw = y + H * (c.a21 * k1);
      k2 = f(t + c.c2 * H, yw);
      yw = y + H * (c.a31 * k1 + c.a32 * k2);
      k3 = f(t + c.c3 * H, yw);
      yw = y + H * (c.a41 * k1 + c.a43 * k3);
      k4 = f(t + c.c4 * H, yw);
      yw = y + H * (c.a51 * k1 + c.a53 * k3 + c.a54 * k4);
      k5 = f(t + c.c5 * H, yw);
      yw = y + H * (c.a61 * k1 + c.a64 * k4 + c.a65 * k5);
      k6 = f(t + c.c6 * H, yw);
      yw = y + H * (c.a71 * k1 + c.a74 * k4 + c.a75 * k5 + c.a76 * k6);
      k7 = f(t + c.c7 * H, yw);
      yw = y + H * (c.a81 * k1 + c.a84 * k4 + c.a85 * k5 + c.a86 * k6 + c.a87 * k7);
      k8 = f(t + c.c8 * H, yw);
      yw = y + H * (c.a91 * k1 + c.a94 * k4 + c.a95 * k5 + c.a96 * k6 + c.a97 * k7 + c.a98 * k8);
      k9 = f(t + c.c9 * H, yw);
      yw = y + H * (c.a101 * k1 + c.a104 * k4 + c.a105 * k5 + c.a106 * k6 + c.a107 * k7 + c.a108 * k8 + c.a109 * k9);
      k10 = f(t + c.c10 * H, yw);
      yw = y + H * (c.a111 * k1 + c.a114 * k4 + c.a115 * k5 + c.a116 * k6 + c.a117 * k7 + c.a118 * k8 +
                    c.a119 * k9 + c.a1110 * k10);
      k2 = f(t + c.c11 * H, yw);
      yw = y + H * (c.a121 * k1 + c.a124 * k4 + c.a125 * k5 + c.a126 * k6 + c.a127 * k7 + c.a128 * k8 +
                    c.a129 * k9 + c.a1210 * k10 + c.a1211 * k2);
      k3 = f(t + H, yw);
      stats_.evaluations += 11;
      k4 = c.b1 * k1 + c.b6 * k6 + c.b7 * k7 + c.b8 * k8 + c.b9 * k9 + c.b10 * k10 + c.b11 * k2 + c.b12 * k3;
      const State y_new = y + H * k4;

      double err3 = 0.0, err5 = 0.0;
      for (int i = 0; i < N; ++i) {
        const double sc =
            atol_ + rtol_ * std::max(std::abs(to_double(y[i])), std::abs(to_double(y_new[i])));
        const double e3 = to_double(k4[i] - c.e31 * k1[i] - c.e32 * k9[i] - c.e33 * k3[i]) / sc;
        const double e5 = to_double(c.e51 * k1[i] + c.e56 * k6[i] + c.e57 * k7[i] + c.e58 * k8[i] + c.e59 * k9[i] +
                                    c.e510 * k10[i] + c.e511 * k2[i] + c.e512 * k3[i]) /
                          sc;
        err3 += e3 * e3;
        err5 += e5 * e5;
      }
      const double denom = err5 + 0.01 * err3;
      const double err = denom > 0.0 ? std::abs(h) * err5 / std::sqrt(N * denom) : 0.0;

      if (err <= 1.0) {
        knew = f(t + H, y_new);
        ++stats_.evaluations;
        Segment seg;
        seg.t0 = t;
        seg.h = H;
        dense(f, c, seg, y, y_new, k1, k2, k3, k6, k7, k8, k9, k10, knew);
        on_step(static_cast<const Segment&>(seg));
        ++stats_.accepted;
        t = final_step ? t_end : S(t + H);
        y = y_new;
        k1 = knew;
        double scale = err == 0.0 ? kMaxScale : std::clamp(kSafety * std::pow(err, -kAlpha), kMinScale, kMaxScale);
        if (last_rejected) scale = std::min(scale, 1.0);
        h *= scale;
        last_rejected = false;
      } else {
        ++stats_.rejected;
        h *= std::max(kSafety * std::pow(err, -kAlpha), kMinScale);
        last_rejected = true;
      }
    }
    return y;
  }

  const StepperStats& stats() const { return stats_; }

 private:
  static constexpr double kAlpha = 0.125;
  static constexpr double kSafety = 0.9;
  static constexpr double kMinScale = 0.333;
  static constexpr double kMaxScale = 6.0;

  double initial_step(const State& y, const State& yp) const {
    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sc = atol_ + rtol_ * std::abs(to_double(y[i]));
      const double r = to_double(yp[i]) / sc;
      sum += r * r;
    }
    return sum > 0.0 ? std::pow(sum / N, -0.0625) : 1.0;
  }

  template <class Rhs>
  void dense(Rhs& f, const Dop853Tableau<S>& c, Segment& seg, const State& y, const State& y_new, const State& k1,
             const State& k2, const State& k3, const State& k6, const State& k7, const State& k8, const State& k9,
             const State& k10, const State& knew) {
    const S& H = seg.h;
    const S& t = seg.t0;
    auto& r = seg.r;
    r[0] = y;
    r[1] = y_new - y;
    r[2] = H * k1 - r[1];
    r[3] = r[1] - H * knew - r[2];
    r[4] = c.d41 * k1 + c.d46 * k6 + c.d47 * k7 + c.d48 * k8 + c.d49 * k9 + c.d410 * k10 + c.d411 * k2 + c.d412 * k3;
    r[5] = c.d51 * k1 + c.d56 * k6 + c.d57 * k7 + c.d58 * k8 + c.d59 * k9 + c.d510 * k10 + c.d511 * k2 + c.d512 * k3;
    r[6] = c.d61 * k1 + c.d66 * k6 + c.d67 * k7 + c.d68 * k8 + c.d69 * k9 + c.d610 * k10 + c.d611 * k2 + c.d612 * k3;
    r[7] = c.d71 * k1 + c.d76 * k6 + c.d77 * k7 + c.d78 * k8 + c.d79 * k9 + c.d710 * k10 + c.d711 * k2 + c.d712 * k3;

    State yw = y + H * (c.a141 * k1 + c.a147 * k7 + c.a148 * k8 + c.a149 * k9 + c.a1410 * k10 + c.a1411 * k2 +
                        c.a1412 * k3 + c.a1413 * knew);
    const State k14 = f(t + c.c14 * H, yw);
    yw = y + H * (c.a151 * k1 + c.a156 * k6 + c.a157 * k7 + c.a158 * k8 + c.a1511 * k2 + c.a1512 * k3 +
                  c.a1513 * knew + c.a1514 * k14);
    const State k15 = f(t + c.c15 * H, yw);
    yw = y + H * (c.a161 * k1 + c.a166 * k6 + c.a167 * k7 + c.a168 * k8 + c.a169 * k9 + c.a1613 * knew +
                  c.a1614 * k14 + c.a1615 * k15);
    const State k16 = f(t + c.c16 * H, yw);
    stats_.evaluations += 3;

    r[4] = H * (r[4] + c.d413 * knew + c.d414 * k14 + c.d415 * k15 + c.d416 * k16);
    r[5] = H * (r[5] + c.d513 * knew + c.d514 * k14 + c.d515 * k15 + c.d516 * k16);
    r[6] = H * (r[6] + c.d613 * knew + c.d614 * k14 + c.d615 * k15 + c.d616 * k16);
    r[7] = H * (r[7] + c.d713 * knew + c.d714 * k14 + c.d715 * k15 + c.d716 * k16);
  }

  double rtol_;
  double atol_;
  StepperStats stats_;
};

}  // namespace j2lab
