#pragma once

#include "contextuality/bell.hpp"
#include "contextuality/core.hpp"
#include "contextuality/errors.hpp"
#include "contextuality/fme.hpp"
#include "contextuality/generators.hpp"
#include "contextuality/lg.hpp"
#include "contextuality/oracle.hpp"
#include "contextuality/ratlp.hpp"
#include "contextuality/scalar.hpp"
