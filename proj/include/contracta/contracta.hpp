#pragma once

#include "contracta/certificate.hpp"
#include "contracta/ellipsoid.hpp"
#include "contracta/errors.hpp"
#include "contracta/exponents.hpp"
#include "contracta/floquet.hpp"
#include "contracta/fractional.hpp"
#include "contracta/integrate.hpp"
#include "contracta/kcompound.hpp"
#include "contracta/linalg.hpp"
#include "contracta/metric.hpp"
#include "contracta/neldermead.hpp"
#include "contracta/parallel.hpp"
#include "contracta/region.hpp"
#include "contracta/report.hpp"
#include "contracta/shooting.hpp"
#include "contracta/synthesis.hpp"
#include "contracta/system.hpp"
#include "contracta/systems.hpp"
#include "contracta/variational.hpp"
#include "contracta/version.hpp"
