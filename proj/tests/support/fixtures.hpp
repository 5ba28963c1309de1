#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

// Fixed data sets and reference values computed once with statsmodels
// (adfuller with autolag=None, coint_johansen with det_order=0).
namespace fixtures {

inline const std::vector<double> kUnitRootSeries = {
    0.000000, 0.000000, 0.025862, -0.566023, -0.694979, -1.295274,
    -0.800869, 1.008917, 0.846352, 0.382668, 1.068741, 1.633924,
    1.850768, 0.964369, 1.001822, 1.850597, 0.613671, 0.240312,
    -1.434294, -2.376148, -3.655646, -3.170340, -3.613705, -2.544721,
    -1.599364, -1.151854, -3.151085, -3.117038, -2.394579, -1.549837,
    -2.463023, -2.362641, -2.676726, -2.815463, -1.046119, -1.219801,
    -0.786721, 0.558985, 0.326108, 0.442202, 0.797945, 1.077609,
    0.018879, 0.286314, 1.928934, 0.556711, 1.495365, 1.784279,
    1.204059, 3.265844, 4.044406, 2.616312, 2.455572, 2.947852,
    2.666120, 3.220939, 3.026763, 3.520578, 4.780396, 3.813656};

inline constexpr double kAdfP1Const = -1.1427222098779446;
inline constexpr double kAdfP2Trend = -1.6398072217507904;
inline constexpr double kAdfP4Const = -0.9034625900839709;
inline constexpr double kAdfP3None = -0.6360359171408821;

// 80 x 3, row-major.
inline const std::vector<double> kCointRows = {
    0.203139, 1.098587, -0.430562, -0.260169, 0.555695, -1.181763,
    -0.132901, 0.504504, -1.609617, -1.320095, -0.288792, -0.404005,
    -1.899397, -0.914865, -1.012751, -2.095593, -2.192590, -0.264656,
    -1.196829, -0.935521, -1.255008, -0.051607, -1.089608, -0.126728,
    -1.375135, -0.123687, -1.712354, -2.169777, -0.110362, -2.184012,
    -1.522874, -0.804766, -0.587779, -3.515293, -1.131451, -2.634505,
    -3.978463, -1.691682, -1.823398, -4.075750, -1.683723, -1.907731,
    -2.818735, -2.058990, 0.470610, -2.129331, -2.358912, -1.661198,
    -2.456545, -3.737486, 0.485735, -2.825121, -4.544332, -0.231442,
    -3.075316, -2.890275, -1.007835, -1.551787, -3.561508, -0.821538,
    -1.979811, -4.615602, 0.092218, -2.283492, -4.278275, 0.707424,
    -1.930903, -2.871003, -0.269213, -2.051673, -4.325027, 0.358683,
    -2.248957, -4.533549, 0.006576, -3.363025, -5.165602, 0.635779,
    -3.374546, -6.926621, 0.391288, -3.818127, -6.191695, -1.956344,
    -2.652000, -6.215139, 0.075998, -1.998911, -6.143697, -0.516796,
    -2.023055, -6.896008, -1.258886, -1.354674, -6.441224, 1.204126,
    -1.694543, -6.980521, 2.672876, -0.642417, -7.123425, 2.437374,
    -0.647816, -8.231685, 1.901166, -0.064434, -9.447788, 2.981452,
    -1.355327, -8.112256, 3.200664, -1.008647, -8.619361, 2.867793,
    -2.696851, -8.327681, 1.481676, -4.732180, -8.361471, -0.010707,
    -5.036657, -8.802616, 0.026107, -5.936585, -9.310577, 0.212946,
    -5.772532, -8.680495, -0.126521, -3.527775, -8.982362, 1.296066,
    -4.359499, -9.133806, -0.232421, -4.983442, -9.111584, 0.565111,
    -4.778038, -7.935076, -0.717994, -4.285025, -7.254565, 0.777385,
    -4.461431, -6.871965, -1.391056, -4.667361, -7.435536, -0.403035,
    -3.964898, -8.817505, 0.745686, -3.444991, -7.867975, -0.324020,
    -4.478666, -6.901528, 1.003122, -4.557848, -7.042236, 0.794726,
    -4.522561, -6.500352, -0.936519, -5.577046, -5.718909, -0.998991,
    -5.317206, -4.887725, -1.464014, -6.175163, -3.966341, -4.826925,
    -5.203096, -4.421959, -1.673065, -5.010350, -2.906986, -2.393526,
    -4.921044, -4.153579, -1.716725, -5.512072, -3.291856, -3.403208,
    -5.630682, -2.797924, -3.037785, -7.628428, -1.924305, -4.712785,
    -8.759836, -0.045296, -5.163291, -8.396996, 1.439149, -6.186015,
    -10.525563, 0.293972, -7.489927, -9.678955, -1.394700, -4.994212,
    -11.425051, -0.577810, -8.210610, -10.668312, -1.592823, -7.142234,
    -11.513810, -1.605228, -8.870979, -10.734818, -0.765501, -5.952888,
    -10.603867, -2.409298, -5.687522, -12.140702, -4.519279, -5.957302,
    -10.891553, -4.259980, -5.384977, -9.449846, -4.215594, -4.840536,
    -9.515651, -4.461397, -4.704006, -9.789567, -4.422862, -5.285158,
    -9.949434, -5.283378, -5.014133, -10.924587, -6.796872, -4.885019};

inline Eigen::MatrixXd coint_matrix() {
    Eigen::MatrixXd m(80, 3);
    for (int i = 0; i < 80; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = kCointRows[static_cast<std::size_t>(3 * i + j)];
    return m;
}

// Constant in the VECM, p = 1 and p = 2.
// statsmodels coint_johansen with k_ar_diff=0 pairs dY_t with Y_t, so p=1 is
// computed directly: demeaned dY_t and Y_{t-1}, eig(Svv^-1 Svu Suu^-1 Suv).
inline constexpr std::array<double, 3> kJohansenEigP1 = {0.5024761847674528, 0.05150802160755454, 0.010362059947432426};
inline constexpr std::array<double, 3> kJohansenMaxEigP1 = {55.15083644348874, 4.177673796698502, 0.8228734691718429};
inline constexpr std::array<double, 3> kJohansenEigP2 = {0.4001830349812944, 0.051149008808675, 0.007630957553931937};
inline constexpr std::array<double, 3> kJohansenMaxEigP2 = {39.86819683141597, 4.095273729991137, 0.597497338167416};

}  // namespace fixtures
