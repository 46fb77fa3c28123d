#pragma once

#include "cayley.hpp"
#include "complexmat.hpp"
#include "config.hpp"
#include "construct.hpp"
#include "hyper.hpp"
#include "linalg.hpp"
#include "parse.hpp"
#include "pencil.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sos.hpp"
#include "uniroots.hpp"
