#pragma once

#include "lefdisc/rational.hpp"
#include "lefdisc/multipoly.hpp"
#include "lefdisc/linear_form.hpp"
#include "lefdisc/rational_matrix.hpp"
#include "lefdisc/poly_matrix.hpp"
#include "lefdisc/ring.hpp"
#include "lefdisc/ring_io.hpp"
#include "lefdisc/lefschetz.hpp"
#include "lefdisc/geometry.hpp"
#include "lefdisc/catalog.hpp"
