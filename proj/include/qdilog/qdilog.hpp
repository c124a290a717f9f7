#pragma once

#include "qdilog/kronecker.hpp"
#include "qdilog/motivic.hpp"
#include "qdilog/qcoeff.hpp"
#include "qdilog/qpoly.hpp"
#include "qdilog/quiver.hpp"
#include "qdilog/report.hpp"
#include "qdilog/skew_series.hpp"
#include "qdilog/wallcross.hpp"
