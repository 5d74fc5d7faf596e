#pragma once

#include "jsmreg/benchmark_suite.hpp"
#include "jsmreg/canny.hpp"
#include "jsmreg/config.hpp"
#include "jsmreg/exports.hpp"
#include "jsmreg/histogram.hpp"
#include "jsmreg/image.hpp"
#include "jsmreg/image_io.hpp"
#include "jsmreg/interpolate.hpp"
#include "jsmreg/jsm.hpp"
#include "jsmreg/optimizer.hpp"
#include "jsmreg/pyramid.hpp"
#include "jsmreg/registration.hpp"
#include "jsmreg/saliency.hpp"
#include "jsmreg/similarity.hpp"
#include "jsmreg/synthetic.hpp"
#include "jsmreg/transform.hpp"
